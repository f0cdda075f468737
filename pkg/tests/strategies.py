"""Hypothesis strategies shared by the test modules."""

import itertools
import random

from hypothesis import strategies as st

from incidence_lab.corpus import random_preorder, random_tree_poset
from incidence_lab.relation import FiniteRelation, is_balanced


@st.composite
def reflexive_relations(draw, min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n))
    xs = range(1, n + 1)
    off = [(a, b) for a, b in itertools.product(xs, repeat=2) if a != b]
    keep = draw(st.lists(st.booleans(), min_size=len(off), max_size=len(off)))
    pairs = {(x, x) for x in xs} | {p for p, k in zip(off, keep) if k}
    return FiniteRelation(tuple(xs), frozenset(pairs))


@st.composite
def preorders(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_preorder(n, random.Random(seed))


@st.composite
def tree_posets(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree_poset(n, random.Random(seed))


def balanced_relations(max_n=4):
    return st.one_of(preorders(max_n), reflexive_relations(max_n=max_n).filter(is_balanced))


@st.composite
def coefficient_maps(draw, rel, lo=-3, hi=3):
    pairs = list(rel.sorted_pairs)
    vals = draw(st.lists(st.integers(lo, hi), min_size=len(pairs), max_size=len(pairs)))
    return dict(zip(pairs, vals))
