"""Extendible, essential and grading sets, and constructions that produce them.

Everything here is certified per finite test group: a grading set is a subset
sigma of rho such that every map sigma -> G extends to exactly one
homomorphism rho -> G. Two independent routes are provided: a
propagation/backtracking extender (:class:`ExtensionSolver`) and brute-force
enumeration of all homomorphisms (:func:`enumerate_homomorphisms`).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable

from .errors import BudgetExceeded, InputError, ValidationError
from .grading import RelationHomomorphism, verify_homomorphism
from .groups import DEFAULT_TEST_GROUPS, Semigroup, by_name
from .relation import (
    FiniteRelation,
    hasse_arrows,
    interval,
    is_preorder,
    min_crosscut_length,
    minimal_connectivity_witness,
    paired_quotient,
    sort_pairs,
    transitive_triples,
)

DEFAULT_BUDGET = 1_000_000


def default_budget() -> int:
    return int(os.environ.get("INCIDENCE_LAB_BUDGET", DEFAULT_BUDGET))


def _resolve(groups):
    return [by_name(g) if isinstance(g, str) else g for g in groups]


class ExtensionSolver:
    """Backtracking search for homomorphisms rho -> G extending fixed values.

    Diagonal pairs are forced to the identity when G is a cancellative monoid.
    Whenever two slots of a transitive triple are known the third is solved
    for (uniquely in a group), and remaining free pairs are branched on in
    canonical order. ``budget`` caps the number of search nodes.
    """

    def __init__(self, rel: FiniteRelation, group: Semigroup, budget: int | None = None):
        if not group.is_finite:
            raise InputError(f"extension search needs a finite group, not {group.name}")
        self.rel = rel
        self.group = group
        self.budget = default_budget() if budget is None else budget
        diag = [p for p in rel.sorted_pairs if p[0] == p[1]]
        off = [p for p in rel.sorted_pairs if p[0] != p[1]]
        self.pairs = diag + off
        self.pid = {p: i for i, p in enumerate(self.pairs)}
        self.n_diag = len(diag)
        els = list(group.elements)
        self.els = els
        eid = {a: i for i, a in enumerate(els)}
        self.eid = eid
        m = len(els)
        self.mul = [[eid[group.op(a, b)] for b in els] for a in els]
        self.left_div = [[[] for _ in range(m)] for _ in range(m)]
        self.right_div = [[[] for _ in range(m)] for _ in range(m)]
        for a in range(m):
            for t in range(m):
                self.left_div[a][self.mul[a][t]].append(t)
                self.right_div[a][self.mul[t][a]].append(t)
        self.triples = [(self.pid[(x, y)], self.pid[(y, z)], self.pid[(x, z)])
                        for x, y, z in transitive_triples(rel)]
        self.occ = [[] for _ in self.pairs]
        for t, (i, j, k) in enumerate(self.triples):
            for v in {i, j, k}:
                self.occ[v].append(t)
        self.forced_diag = (eid[group.identity]
                            if group.is_monoid and group.is_cancellative else None)
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                f"extension search over {self.group.name} exceeded {self.budget} nodes"
            )

    def _candidates(self, val, t, u):
        i, j, k = self.triples[t]
        mul = self.mul
        if u == k and i != u and j != u:
            return (mul[val[i]][val[j]],)
        if u == j and i != u and k != u:
            return self.left_div[val[i]][val[k]]
        if u == i and j != u and k != u:
            return self.right_div[val[j]][val[k]]
        out = []
        for c in range(len(self.els)):
            a = c if i == u else val[i]
            b = c if j == u else val[j]
            r = c if k == u else val[k]
            if mul[a][b] == r:
                out.append(c)
        return out

    def _assign(self, val, v, c, trail):
        """Set v = c and propagate; False on contradiction. Every write goes on trail."""
        val[v] = c
        trail.append(v)
        queue = [v]
        while queue:
            w = queue.pop()
            for t in self.occ[w]:
                i, j, k = self.triples[t]
                free = {s for s in (i, j, k) if val[s] < 0}
                if not free:
                    if self.mul[val[i]][val[j]] != val[k]:
                        return False
                elif len(free) == 1:
                    u = free.pop()
                    cands = self._candidates(val, t, u)
                    if not cands:
                        return False
                    if len(cands) == 1:
                        val[u] = cands[0]
                        trail.append(u)
                        queue.append(u)
        return True

    def _undo(self, val, trail, mark):
        while len(trail) > mark:
            val[trail.pop()] = -1

    def solve(self, fixed: dict | None = None, limit: int | None = None):
        """Yield homomorphisms (as pair -> element dicts) extending ``fixed``."""
        self.nodes = 0
        val = [-1] * len(self.pairs)
        trail = []
        start = []
        if self.forced_diag is not None:
            start += [(i, self.forced_diag) for i in range(self.n_diag)]
        for p, a in (fixed or {}).items():
            p = tuple(p)
            if p not in self.pid:
                raise InputError(f"{p} is not in the relation")
            if a not in self.eid:
                raise InputError(f"{a!r} is not an element of {self.group.name}")
            start.append((self.pid[p], self.eid[a]))
        for v, c in start:
            if val[v] >= 0:
                if val[v] != c:
                    return
                continue
            if not self._assign(val, v, c, trail):
                return
        found = 0
        order = range(len(self.pairs))

        def first_free():
            for v in order:
                if val[v] < 0:
                    return v
            return None

        def rec():
            nonlocal found
            self._tick()
            v = first_free()
            if v is None:
                found += 1
                yield {p: self.els[val[i]] for i, p in enumerate(self.pairs)}
                return
            for c in range(len(self.els)):
                mark = len(trail)
                if self._assign(val, v, c, trail):
                    yield from rec()
                    if limit is not None and found >= limit:
                        self._undo(val, trail, mark)
                        return
                self._undo(val, trail, mark)

        yield from rec()

    def extend(self, fixed: dict):
        return next(self.solve(fixed, limit=1), None)

    def extensions(self, fixed: dict, limit: int | None = None) -> list:
        return list(self.solve(fixed, limit=limit))


def enumerate_homomorphisms(rel: FiniteRelation, group: Semigroup,
                            budget: int | None = None) -> list:
    """Every homomorphism rho -> G by exhaustive product enumeration (oracle route).

    Off-diagonal values range over all of G; diagonal values over the
    idempotents. Independent of :class:`ExtensionSolver`.
    """
    if not group.is_finite:
        raise InputError("enumeration needs a finite group")
    budget = default_budget() if budget is None else budget
    idem = [a for a in group.elements if group.op(a, a) == a]
    pairs = list(rel.sorted_pairs)
    domains = [idem if a == b else list(group.elements) for a, b in pairs]
    total = 1
    for d in domains:
        total *= len(d)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate maps exceed the budget of {budget}")
    triples = transitive_triples(rel)
    out = []
    for combo in itertools.product(*domains):
        values = dict(zip(pairs, combo))
        if all(group.op(values[(x, y)], values[(y, z)]) == values[(x, z)] for x, y, z in triples):
            out.append(values)
    return out


def _check_subset(rel, subset):
    subset = tuple(sort_pairs({tuple(p) for p in subset}))
    for p in subset:
        if p not in rel.pairs:
            raise InputError(f"{p} is not in the relation")
    return subset


def _maps(subset, group, budget):
    n = len(group.elements) ** len(subset)
    if n > budget:
        raise BudgetExceeded(f"{n} maps from a {len(subset)}-set into {group.name} exceed the budget")
    for combo in itertools.product(group.elements, repeat=len(subset)):
        yield dict(zip(subset, combo))


def extendibility_witness(rel, subset, group, budget=None):
    """First phi: subset -> G with no extension to rho, or None."""
    budget = default_budget() if budget is None else budget
    subset = _check_subset(rel, subset)
    solver = ExtensionSolver(rel, group, budget)
    for phi in _maps(subset, group, budget):
        if solver.extend(phi) is None:
            return phi
    return None


def is_extendible(rel, subset, group, budget=None) -> bool:
    return extendibility_witness(rel, subset, group, budget) is None


def _determined_closure(rel, subset, group):
    """Pairs whose value is a function of the values on subset, by triple propagation in a group."""
    known = set(subset)
    if group.is_monoid and group.is_cancellative:
        known |= {(x, x) for x in rel.elements}
    triples = transitive_triples(rel)
    changed = True
    while changed:
        changed = False
        for x, y, z in triples:
            slots = [(x, y), (y, z), (x, z)]
            missing = [s for s in slots if s not in known]
            # solvable only when the unknown occurs once, e.g. not in Phi(x,x)Phi(x,y) = Phi(x,y)
            if len(missing) == 1 and group.is_group:
                known.add(missing[0])
                changed = True
    return known


def essentiality_witness(rel, subset, group, budget=None):
    """Two distinct homomorphisms agreeing on subset, or None.

    Group targets first try propagation: if the subset determines every pair,
    uniqueness holds outright. Otherwise all homomorphisms are enumerated by
    the extension solver and compared on the subset.
    """
    budget = default_budget() if budget is None else budget
    subset = _check_subset(rel, subset)
    if group.is_group and _determined_closure(rel, subset, group) >= rel.pairs:
        return None
    seen = {}
    for hom in ExtensionSolver(rel, group, budget).solve():
        key = tuple(hom[p] for p in subset)
        if key in seen:
            return (seen[key], hom)
        seen[key] = hom
    return None


def is_essential(rel, subset, group, budget=None) -> bool:
    return essentiality_witness(rel, subset, group, budget) is None


def is_grading_set(rel, subset, group, budget=None) -> bool:
    """Every phi on subset extends to exactly one homomorphism."""
    return is_extendible(rel, subset, group, budget) and is_essential(rel, subset, group, budget)


@dataclass
class GradingSetVerdict:
    relation: FiniteRelation
    subset: tuple
    groups: dict = field(default_factory=dict)
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return all(v["extendible"] and v["essential"] for v in self.groups.values())

    def as_json(self, fmt_atom=str) -> dict:
        return {
            "subset": [[fmt_atom(a), fmt_atom(b)] for a, b in self.subset],
            "groups": self.groups,
            "witness": self.witness,
            "certified_for": "listed groups",
        }


def grading_set_verdict(rel, subset, groups=DEFAULT_TEST_GROUPS, budget=None) -> GradingSetVerdict:
    """Per-group extendible/essential verdicts; the witness is the first failure found."""
    subset = _check_subset(rel, subset)
    verdict = GradingSetVerdict(rel, subset)
    for g in _resolve(groups):
        phi = extendibility_witness(rel, subset, g, budget)
        pair = essentiality_witness(rel, subset, g, budget)
        verdict.groups[g.name] = {"extendible": phi is None, "essential": pair is None}
        if verdict.witness is None and phi is not None:
            verdict.witness = {"group": g.name, "kind": "no extension",
                               "phi": [[str(a), str(b), g.format(v)] for (a, b), v in phi.items()]}
        elif verdict.witness is None and pair is not None:
            h1, h2 = pair
            diff = next(p for p in rel.sorted_pairs if h1[p] != h2[p])
            verdict.witness = {"group": g.name, "kind": "two extensions agree on subset",
                               "differ_at": [str(diff[0]), str(diff[1])],
                               "values": [g.format(h1[diff]), g.format(h2[diff])]}
    return verdict


# -- constructions -----------------------------------------------------------

def hasse_extension(rel: FiniteRelation, phi: dict, group: Semigroup) -> RelationHomomorphism:
    """Extend phi on the Hasse arrows of a minimally connected order along unique chains."""
    bad = minimal_connectivity_witness(rel)
    if bad is not None:
        reason, where = bad
        at = f" at interval [{where[0]}, {where[1]}]" if where else ""
        raise InputError(f"not minimally connected: {reason}{at}")
    if not group.is_monoid:
        raise InputError(f"{group.name} has no identity for the diagonal")
    arrows = set(hasse_arrows(rel))
    phi = {tuple(p): v for p, v in phi.items()}
    if set(phi) != arrows:
        raise InputError("phi must be defined exactly on the Hasse arrows")
    values = {}
    for x, y in rel.sorted_pairs:
        between = interval(rel, x, y)
        # chain members sorted bottom to top
        path = sorted(between, key=lambda z: sum((w, z) in rel.pairs for w in between))
        acc = group.identity
        for a, b in zip(path, path[1:]):
            acc = group.op(acc, phi[(a, b)])
        values[(x, y)] = acc
    return verify_homomorphism(values, rel, group)


def search_grading_set(rel: FiniteRelation, groups=DEFAULT_TEST_GROUPS, max_size: int | None = None,
                       budget: int | None = None):
    """Smallest subset that is a grading set for every listed group.

    Candidates are tried by size, then lexicographically over pairs ranked by
    interval length, so Hasse arrows are preferred over composite pairs.

    Enumerates Hom(rho, G) once per group; sigma is a grading set exactly when
    restriction to sigma is a bijection onto G^sigma. Returns None when nothing
    qualifies up to ``max_size``.
    """
    groups = _resolve(groups)
    budget = default_budget() if budget is None else budget
    homs = {}
    for g in groups:
        homs[g.name] = list(ExtensionSolver(rel, g, budget).solve())
    nontrivial = all(g.is_monoid and g.is_cancellative and len(g.elements) > 1 for g in groups)
    pool = rel.sorted_off_diagonal if nontrivial else rel.sorted_pairs
    # short pairs first, so covering arrows win ties against composites
    pool = sorted(pool, key=lambda p: (len(interval(rel, *p)), rel.sorted_pairs.index(p)))
    max_size = len(pool) if max_size is None else max_size
    for k in range(max_size + 1):
        if any(len(homs[g.name]) != len(g.elements) ** k for g in groups):
            continue
        for subset in itertools.combinations(pool, k):
            if all(len({tuple(h[p] for p in subset) for h in homs[g.name]}) == len(homs[g.name])
                   for g in groups):
                return tuple(sort_pairs(subset))
    return None


@dataclass
class JonesLift:
    relation: FiniteRelation
    quotient: FiniteRelation
    class_of: dict
    representatives: tuple
    quotient_sigma: tuple
    beta: tuple
    gamma: tuple
    quotient_extender: Callable = field(repr=False)

    @property
    def sigma(self) -> tuple:
        return tuple(sort_pairs(set(self.beta) | set(self.gamma)))

    def extend(self, phi: dict, group: Semigroup) -> RelationHomomorphism:
        """Phi(x1, x2) = phibar(p1, x1)^-1 Psi([p1], [p2]) phibar(p2, x2), with phibar(p, p) = 1."""
        if not group.is_group:
            raise InputError(f"the lift formula uses inverses; {group.name} is not a group")
        phi = {tuple(p): v for p, v in phi.items()}
        if set(phi) != set(self.sigma):
            raise InputError("phi must be defined exactly on sigma")
        psi = {p: phi[p] for p in self.beta}
        big_psi = self.quotient_extender(psi, group)
        phibar = {(p, p): group.identity for p in self.representatives}
        phibar.update({p: phi[p] for p in self.gamma})
        values = {}
        for x1, x2 in self.relation.sorted_pairs:
            p1, p2 = self.class_of[x1], self.class_of[x2]
            values[(x1, x2)] = group.op(
                group.op(group.inverse(phibar[(p1, x1)]), big_psi[(p1, p2)]),
                phibar[(p2, x2)],
            )
        return verify_homomorphism(values, self.relation, group)


def jones_lift(rel: FiniteRelation, quotient_sigma=None, representatives=None,
               test_groups=DEFAULT_TEST_GROUPS, budget: int | None = None) -> JonesLift:
    """Lift a grading set of the paired quotient to sigma = beta | gamma on the preorder.

    gamma joins each representative p to the other members of its class. When
    ``quotient_sigma`` is omitted it is the Hasse arrow set (minimally connected
    quotient) or found by :func:`search_grading_set`; either way it is checked
    against ``test_groups`` before lifting.
    """
    if not is_preorder(rel):
        raise InputError("the lift needs a preorder")
    length = min_crosscut_length(rel)
    if length > 2:
        raise InputError(f"shortest crosscut has length {length}; the lift needs length one or two")
    quot = paired_quotient(rel, representatives)
    q = quot.relation
    minimally = minimal_connectivity_witness(q) is None
    if quotient_sigma is None:
        if minimally:
            quotient_sigma = hasse_arrows(q)
        else:
            quotient_sigma = search_grading_set(q, test_groups, budget=budget)
            if quotient_sigma is None:
                raise ValidationError("no grading set found for the quotient within bounds")
    quotient_sigma = _check_subset(q, quotient_sigma)
    for g in _resolve(test_groups):
        if not is_grading_set(q, quotient_sigma, g, budget):
            raise ValidationError(
                f"{list(quotient_sigma)} is not a grading set of the quotient over {g.name}",
                witness=g.name,
            )
    reps = quot.representatives
    beta = quotient_sigma
    gamma = tuple(sort_pairs((p, x) for p in reps for x in quot.classes[p] if x != p))

    def quotient_extender(psi, group):
        if minimally and set(psi) == set(hasse_arrows(q)):
            return hasse_extension(q, psi, group)
        found = ExtensionSolver(q, group, budget).extensions(psi, limit=2)
        if len(found) != 1:
            raise ValidationError(f"psi has {len(found)} extensions on the quotient")
        return found[0]

    return JonesLift(rel, q, quot.class_of, reps, quotient_sigma, beta, gamma, quotient_extender)
