import itertools

import pytest
from hypothesis import given

from incidence_lab.corpus import screen_reflexive, stable_unlocked_classes
from incidence_lab.errors import InputError
from incidence_lab.fixtures import CHAIN3, DIAMOND, FIG2A, FIG2B, FIG2C, SQUARE4, UNBALANCED4
from incidence_lab.relation import (
    FiniteRelation,
    antichain,
    balance_witness,
    chain,
    clasps,
    crosscuts,
    hasse_arrows,
    interval,
    is_antisymmetric,
    is_balanced,
    is_connected,
    is_crosscut,
    is_isomorphic,
    is_minimally_connected,
    is_partial_order,
    is_preorder,
    is_reflexive,
    is_stable,
    is_transitive,
    locked_clasp_witness,
    maximal_chains,
    min_crosscut_length,
    minimal_connectivity_witness,
    paired_quotient,
    parse_atom,
    reflexive_relations,
    stability_witness,
    transitive_triples,
)

from strategies import preorders, reflexive_relations as relations_st, tree_posets

BALANCED_NOT_STABLE = FiniteRelation.build(
    [1, 2, 3, 4], [(1, 2), (1, 4), (2, 4), (3, 1), (3, 2)], reflexive_closure=True
)


def test_construction_canonicalizes():
    r = FiniteRelation((3, "b", 1, "a"), frozenset({(1, 3), ("a", "b")}))
    assert r.elements == (1, 3, "a", "b")
    assert r.sorted_pairs == ((1, 3), ("a", "b"))


def test_pair_outside_ground_set_rejected():
    with pytest.raises(InputError):
        FiniteRelation((1, 2), frozenset({(1, 3)}))


def test_parse_atom():
    assert parse_atom("12") == 12
    assert parse_atom("-3") == -3
    assert parse_atom("x1") == "x1"


def test_reflexive_examples():
    assert is_reflexive(FiniteRelation((), frozenset()))
    assert not is_reflexive(FiniteRelation((1, 2), frozenset({(1, 1)})))
    assert is_reflexive(CHAIN3)


def test_interval_examples():
    assert interval(CHAIN3, 1, 3) == (1, 2, 3)
    assert interval(CHAIN3, 3, 1) == ()
    for x in FIG2A.elements:
        assert x in interval(FIG2A, x, x)


def test_transitive_triples_examples():
    triples = set(map(tuple, transitive_triples(CHAIN3)))
    assert (1, 2, 3) in triples
    assert {(x, x, x) for x in CHAIN3.elements} <= triples
    fig = set(map(tuple, transitive_triples(FIG2A)))
    assert {(2, 3, 4), (2, 4, 3), (3, 4, 3), (4, 3, 4)} <= fig
    assert (1, 2, 3) not in fig
    assert all(len(set(t)) == 1 for t in transitive_triples(antichain(3)))


@given(relations_st(max_n=4))
def test_transitive_triples_match_definition(rel):
    want = {(x, y, z) for x, y, z in itertools.product(rel.elements, repeat=3)
            if (x, y) in rel.pairs and (y, z) in rel.pairs and (x, z) in rel.pairs}
    assert set(map(tuple, transitive_triples(rel))) == want


def test_balance_examples():
    assert balance_witness(UNBALANCED4) == (1, 2, 3, 4)
    assert is_balanced(SQUARE4)
    assert balance_witness(FiniteRelation((1, 2), frozenset({(1, 1)}))) == (2,)


@given(preorders())
def test_preorders_are_balanced_and_stable(rel):
    assert is_balanced(rel)
    assert is_stable(rel)
    assert clasps(rel) == ()


def test_stability_examples():
    assert is_stable(FIG2A)
    assert is_balanced(BALANCED_NOT_STABLE)
    assert stability_witness(BALANCED_NOT_STABLE) == (3, 1, 2, 4)


def test_clasp_examples():
    assert clasps(FIG2A) == ((2, "unlocked"),)
    assert clasps(SQUARE4) == ((2, "unlocked"), (3, "unlocked"))


def test_locked_clasp_detected():
    # x=0 with u=1, w=2 below and v=3, y=4 above; 2 does not reach 4
    rel = FiniteRelation.build(
        range(5), [(1, 0), (2, 0), (0, 3), (0, 4), (1, 3), (1, 4), (2, 3)], reflexive_closure=True
    )
    assert dict(clasps(rel))[0] == "locked"
    assert locked_clasp_witness(rel, 0) == (1, 3, 2, 4)


def test_order_predicates():
    assert is_preorder(CHAIN3) and is_partial_order(CHAIN3)
    assert is_connected(CHAIN3) and is_minimally_connected(CHAIN3)
    assert is_partial_order(DIAMOND)
    assert minimal_connectivity_witness(DIAMOND) == ("interval is not a chain", (0, 3))
    assert is_preorder(FIG2B) and not is_partial_order(FIG2B)
    assert not is_antisymmetric(FIG2B)


def test_hasse_examples():
    assert hasse_arrows(CHAIN3) == ((1, 2), (2, 3))
    assert hasse_arrows(FIG2C) == ((1, 2), (3, 4))
    assert hasse_arrows(antichain(3)) == ()
    with pytest.raises(InputError):
        hasse_arrows(FIG2B)


@given(tree_posets())
def test_hasse_closure_recovers_order(poset):
    arrows = set(hasse_arrows(poset))
    closure = {(x, x) for x in poset.elements} | arrows
    while True:
        more = {(a, d) for a, b in closure for c, d in closure if b == c} - closure
        if not more:
            break
        closure |= more
    assert closure == poset.pairs


def test_quotient_examples():
    q = paired_quotient(FIG2B)
    assert q.classes == {1: (1,), 2: (2,), 3: (3,), 4: (4, 5)}
    assert q.representatives == (1, 2, 3, 4)
    assert q.relation == FIG2C
    assert paired_quotient(CHAIN3).relation == CHAIN3
    pair = FiniteRelation.build(["a", "b"], [("a", "b"), ("b", "a")], reflexive_closure=True)
    assert len(paired_quotient(pair).relation) == 1
    alt = paired_quotient(FIG2B, representatives=[1, 2, 3, 5])
    assert alt.representatives == (1, 2, 3, 5)
    assert alt.class_of[4] == 5


def test_quotient_rejects_bad_representatives():
    with pytest.raises(InputError):
        paired_quotient(FIG2B, representatives=[1, 2, 3, 4, 5])


def test_crosscut_examples():
    assert crosscuts(CHAIN3, 1) == [(1,), (2,), (3,)]
    assert (1, 3) in crosscuts(FIG2C, 2)
    assert crosscuts(FIG2C, 2) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert min_crosscut_length(FIG2B) == 2
    assert min_crosscut_length(DIAMOND) == 1


@given(preorders(max_n=6))
def test_minimal_elements_form_a_crosscut(rel):
    q = paired_quotient(rel).relation
    minimal = [x for x in q.elements if not any((y, x) in q.off_diagonal for y in q.elements)]
    assert is_crosscut(q, minimal)


@given(preorders(max_n=6))
def test_maximal_chains_are_maximal(rel):
    q = paired_quotient(rel).relation
    for c in maximal_chains(q):
        for x in q.elements:
            if x not in c:
                assert not all((x, y) in q.pairs or (y, x) in q.pairs for y in c)


def test_isomorphism():
    assert is_isomorphic(chain(3), chain(3, start=5))
    assert not is_isomorphic(chain(3), antichain(3))


def test_vectorized_screen_matches_scalar_predicates():
    """Two independent routes over all 4096 reflexive relations on 4 atoms."""
    slots, masks, bal, stable, locked = screen_reflexive(4)
    for mask, rel in zip(masks, reflexive_relations(4)):
        m = int(mask)
        assert bal[m] == is_balanced(rel)
        assert stable[m] == is_stable(rel)
        assert locked[m] == any(k == "locked" for _, k in clasps(rel))


def test_frozen_counts():
    counts = {}
    for n in (2, 3, 4):
        _, _, bal, stable, _ = screen_reflexive(n)
        counts[n] = (int(bal.sum()), int(stable.sum()))
    assert counts == {2: (4, 4), 3: (37, 37), 4: (849, 777)}
    assert sum(is_balanced(r) and not is_stable(r) for r in reflexive_relations(4)) == 72


def test_stable_unlocked_class_counts():
    assert [len(stable_unlocked_classes(n)) for n in (1, 2, 3, 4)] == [1, 3, 11, 55]


@given(relations_st(max_n=4))
def test_transitive_iff_no_witness(rel):
    brute = all((a, d) in rel.pairs for (a, b), (c, d) in itertools.product(rel.pairs, repeat=2) if b == c)
    assert is_transitive(rel) == brute
