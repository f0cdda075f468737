"""Generators for test corpora: random posets and preorders, and exhaustive sweeps.

The exhaustive sweep over reflexive relations on n atoms screens all 2^(n(n-1))
bitmasks at once with numpy, then reduces the survivors to isomorphism classes.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .relation import (
    FiniteRelation,
    chain,
    is_minimally_connected,
    is_partial_order,
    min_crosscut_length,
)


def random_tree_poset(n: int, rng: random.Random) -> FiniteRelation:
    """Random minimally connected poset: orient a random tree, then close transitively.

    Every oriented tree is minimally connected (unique undirected paths make
    intervals chains), so the result needs no rejection step beyond a check.
    """
    if n == 1:
        return chain(1)
    edges = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        edges.append((u, v) if rng.random() < 0.5 else (v, u))
    pairs = {(x, x) for x in range(1, n + 1)} | set(edges)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(pairs), repeat=2):
            if b == c and (a, d) not in pairs:
                pairs.add((a, d))
                changed = True
    rel = FiniteRelation(tuple(range(1, n + 1)), frozenset(pairs))
    assert is_minimally_connected(rel), rel
    return rel


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> FiniteRelation:
    """Random partial order on 1..n: random DAG along a shuffled linear extension, closed."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    pairs = {(x, x) for x in order}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < density:
            pairs.add((order[i], order[j]))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(pairs), repeat=2):
            if b == c and (a, d) not in pairs:
                pairs.add((a, d))
                changed = True
    rel = FiniteRelation(tuple(order), frozenset(pairs))
    assert is_partial_order(rel)
    return rel


def blow_up(poset: FiniteRelation, sizes: dict) -> FiniteRelation:
    """Replace each atom x by sizes[x] mutually related copies; atoms are renumbered 1..N."""
    label = {}
    nxt = 1
    for x in poset.elements:
        label[x] = list(range(nxt, nxt + sizes.get(x, 1)))
        nxt += sizes.get(x, 1)
    pairs = {(u, v) for a, b in poset.pairs for u in label[a] for v in label[b]}
    return FiniteRelation(tuple(range(1, nxt)), frozenset(pairs))


def random_preorder(n_atoms: int, rng: random.Random, max_classes: int | None = None) -> FiniteRelation:
    """Random preorder on exactly n_atoms atoms built by blowing up a random poset."""
    k = rng.randint(1, max_classes or n_atoms)
    k = min(k, n_atoms)
    poset = random_poset(k, rng)
    sizes = {x: 1 for x in poset.elements}
    for _ in range(n_atoms - k):
        sizes[rng.choice(poset.elements)] += 1
    return blow_up(poset, sizes)


def crosscut_le2_preorders(count: int, max_atoms: int, seed: int = 0) -> list:
    """Distinct random preorders with a crosscut of length one or two and at least one paired class."""
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        n = rng.randint(2, max_atoms)
        rel = random_preorder(n, rng)
        if rel in seen or min_crosscut_length(rel) > 2:
            continue
        seen.add(rel)
        out.append(rel)
    return out


# -- exhaustive screening ----------------------------------------------------

def _slot_arrays(n: int):
    atoms = range(n)
    slots = [(a, b) for a in atoms for b in atoms if a != b]
    masks = np.arange(1 << len(slots), dtype=np.uint32)
    R = {}
    ones = np.ones(masks.shape, dtype=bool)
    for a in atoms:
        R[(a, a)] = ones
    for s, (a, b) in enumerate(slots):
        R[(a, b)] = ((masks >> s) & 1).astype(bool)
    return slots, masks, R


def screen_reflexive(n: int):
    """Boolean columns over all reflexive relations on n atoms: balanced, stable, has a locked clasp.

    This is a vectorized restatement of the predicates in :mod:`incidence_lab.relation`;
    callers cross-check survivors with those scalar predicates.
    """
    slots, masks, R = _slot_arrays(n)
    atoms = range(n)
    unbalanced = np.zeros(masks.shape, dtype=bool)
    for w, x, y, z in itertools.product(atoms, repeat=4):
        premise = R[(w, x)] & R[(x, y)] & R[(y, z)] & R[(w, z)]
        unbalanced |= premise & (R[(w, y)] ^ R[(x, z)])
    five = np.zeros(masks.shape, dtype=bool)
    for a, b, c, d in itertools.permutations(atoms, 4):
        five |= R[(a, b)] & R[(a, c)] & R[(b, c)] & R[(b, d)] & R[(c, d)] & ~R[(a, d)]
    locked = np.zeros(masks.shape, dtype=bool)
    for x in atoms:
        rest = [t for t in atoms if t != x]
        for u, v, w, y in itertools.product(rest, repeat=4):
            locked |= (~R[(w, y)] & R[(u, x)] & R[(x, y)] & R[(u, y)] & R[(x, v)]
                       & R[(u, v)] & R[(w, x)] & R[(w, v)])
    balanced = ~unbalanced
    return slots, masks, balanced, balanced & ~five, locked


def canonical_masks(n: int, slots, masks: np.ndarray) -> np.ndarray:
    """Least relabelled bitmask of each input mask over all permutations of the atoms."""
    index = {p: i for i, p in enumerate(slots)}
    best = None
    for perm in itertools.permutations(range(n)):
        out = np.zeros(masks.shape, dtype=np.uint32)
        for s, (a, b) in enumerate(slots):
            bit = (masks >> s) & 1
            out |= bit << np.uint32(index[(perm[a], perm[b])])
        best = out if best is None else np.minimum(best, out)
    return best


def mask_to_relation(n: int, slots, mask: int) -> FiniteRelation:
    pairs = {(x + 1, x + 1) for x in range(n)}
    pairs |= {(a + 1, b + 1) for s, (a, b) in enumerate(slots) if mask >> s & 1}
    return FiniteRelation(tuple(range(1, n + 1)), frozenset(pairs))


def stable_unlocked_classes(n: int) -> list:
    """One representative per isomorphism class of stable relations on n atoms with no locked clasp."""
    if n <= 1:
        return [chain(n)] if n else [FiniteRelation((), frozenset())]
    slots, masks, _, stable, locked = screen_reflexive(n)
    keep = masks[stable & ~locked]
    reps = np.unique(canonical_masks(n, slots, keep))
    return [mask_to_relation(n, slots, int(m)) for m in reps]
