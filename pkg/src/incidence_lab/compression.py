"""Compression maps, the gradings and embeddings they carry, and clasp splitting.

A compression theta: X2 -> X1 is a relation-preserving surjection that lifts
every transitive triple of X1 and restricts to a bijection theta* between the
off-diagonal parts. Homomorphisms pull back along theta, ring elements embed
via h(f)(x, y) = f(theta x, theta y), and grading sets transport along theta*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded, InputError, ValidationError
from .grading import InducedGrading, RelationHomomorphism, verify_homomorphism
from .gradingsets import DEFAULT_TEST_GROUPS, _resolve, default_budget, grading_set_verdict
from .relation import (
    FiniteRelation,
    clasps,
    interval,
    is_preorder,
    locked_clasp_witness,
    sort_pairs,
    stability_witness,
    transitive_triples,
)
from .ring import RingElement, standard_unit


@dataclass(frozen=True)
class CompressionMap:
    source: FiniteRelation
    target: FiniteRelation
    theta: dict
    theta_star: dict

    def __call__(self, x):
        return self.theta[x]

    def star_inverse(self) -> dict:
        return {v: k for k, v in self.theta_star.items()}

    def __repr__(self):
        body = ", ".join(f"{x}->{self.theta[x]}" for x in self.source.elements)
        return f"CompressionMap({body})"


def compression_violations(theta: dict, source: FiniteRelation, target: FiniteRelation) -> list:
    """All violated conditions as (condition number, message, witness), checked in order 1, 3, 2."""
    out = []
    missing = [x for x in source.elements if x not in theta]
    if missing:
        raise InputError(f"theta is not defined on {missing[0]}")
    bad_vals = [x for x in source.elements if theta[x] not in target.index]
    if bad_vals:
        raise InputError(f"theta({bad_vals[0]}) = {theta[bad_vals[0]]!r} is not in the target")
    image = {theta[x] for x in source.elements}
    gaps = [a for a in target.elements if a not in image]
    if gaps:
        out.append((1, "theta is not surjective", gaps[0]))
    for x, y in source.sorted_pairs:
        if (theta[x], theta[y]) not in target.pairs:
            out.append((1, "theta does not preserve the relation", (x, y)))
            break
    star = {}
    seen = {}
    for x, y in source.sorted_off_diagonal:
        img = (theta[x], theta[y])
        if img[0] == img[1]:
            out.append((3, "an off-diagonal pair maps onto the diagonal", (x, y)))
            break
        if img in seen:
            out.append((3, "theta* is not injective", (seen[img], (x, y))))
            break
        seen[img] = (x, y)
        star[(x, y)] = img
    for p in target.sorted_off_diagonal:
        if p not in seen:
            out.append((3, "theta* misses an off-diagonal pair of the target", p))
            break
    lifted = {(theta[x], theta[y], theta[z]) for x, y, z in transitive_triples(source)}
    for t in transitive_triples(target):
        if tuple(t) not in lifted:
            out.append((2, "a transitive triple of the target does not lift", tuple(t)))
            break
    return out


def verify_compression(theta: dict, source: FiniteRelation, target: FiniteRelation) -> CompressionMap:
    theta = dict(theta)
    problems = compression_violations(theta, source, target)
    if problems:
        cond, msg, witness = problems[0]
        err = ValidationError(f"condition {cond}: {msg} ({witness})", witness=witness, condition=cond)
        err.violations = problems
        raise err
    star = {(x, y): (theta[x], theta[y]) for x, y in source.off_diagonal}
    return CompressionMap(source, target, theta, star)


def identity_compression(rel: FiniteRelation) -> CompressionMap:
    return verify_compression({x: x for x in rel.elements}, rel, rel)


def interval_image_witness(cm: CompressionMap):
    """First x rho2 y with theta([x, y]) != [theta x, theta y], or None."""
    th = cm.theta
    for x, y in cm.source.sorted_pairs:
        img = {th[z] for z in interval(cm.source, x, y)}
        if img != set(interval(cm.target, th[x], th[y])):
            return (x, y)
    return None


def induce_hom_through(hom: RelationHomomorphism, cm: CompressionMap) -> RelationHomomorphism:
    """Pull back: Phi2(x, y) = Phi1(theta x, theta y), re-verified."""
    if hom.relation != cm.target:
        raise InputError("homomorphism is not on the compression's target")
    th = cm.theta
    values = {(x, y): hom[(th[x], th[y])] for x, y in cm.source.pairs}
    return verify_homomorphism(values, cm.source, hom.group)


def graded_embedding(f: RingElement, cm: CompressionMap) -> RingElement:
    """h(f)(x, y) = f(theta x, theta y) on the pairs of the source relation."""
    if f.relation != cm.target:
        raise InputError("element is not over the compression's target")
    th = cm.theta
    coeffs = {}
    for x, y in cm.source.pairs:
        v = f.coefficients.get((th[x], th[y]))
        if v is not None:
            coeffs[(x, y)] = v
    return RingElement(cm.source, f.ring, coeffs)


def embedding_grading_witness(cm: CompressionMap, grading1: InducedGrading, grading2: InducedGrading):
    """First unit e_ab of the target ring whose image leaves T_{deg e_ab}, or None."""
    for a, b in cm.target.sorted_pairs:
        img = graded_embedding(standard_unit(cm.target, grading1.ring, a, b), cm)
        img = RingElement(cm.source, grading2.ring, img.coefficients)
        if not grading2.in_component(img, grading1.degrees[(a, b)]):
            return (a, b)
    return None


def _require_cancellative(groups):
    groups = _resolve(groups)
    for g in groups:
        if not (g.is_monoid and g.is_cancellative):
            raise InputError(
                f"grading sets transport along a compression only for cancellative monoids; "
                f"{g.name} is not one"
            )
    return groups


def transport_grading_set(subset, cm: CompressionMap, direction: str = "forward",
                          groups=DEFAULT_TEST_GROUPS, verify: bool = True, budget=None):
    """Move a grading set across theta*; returns (subset, verdict or None)."""
    groups = _require_cancellative(groups)
    subset = [tuple(p) for p in subset]
    if direction == "forward":
        dest, star = cm.target, cm.theta_star
    elif direction == "reverse":
        dest, star = cm.source, cm.star_inverse()
    else:
        raise InputError(f"direction must be 'forward' or 'reverse', not {direction!r}")
    for p in subset:
        if p not in star:
            raise InputError(f"{p} is not an off-diagonal pair of the {direction} source")
    out = tuple(sort_pairs(star[p] for p in subset))
    verdict = grading_set_verdict(dest, out, groups, budget) if verify else None
    return out, verdict


# -- clasp splitting -----------------------------------------------------------

def _fresh_labels(rel: FiniteRelation, count: int) -> list:
    if all(isinstance(x, int) for x in rel.elements):
        top = max(rel.elements, default=0)
        return list(range(top + 1, top + 1 + count))
    names = set(map(str, rel.elements))
    out = []
    i = 1
    while len(out) < count:
        cand = f"y{i}"
        if cand not in names:
            out.append(cand)
        i += 1
    return out


def _transitive_closure(pairs: set) -> set:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c, d in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return closed


def _materialize(rel, copies: dict, choice: dict):
    """Build (Y, theta) from per-atom copy counts and the copy pair chosen for each off-diagonal pair."""
    extra = sum(n - 1 for n in copies.values())
    fresh = iter(_fresh_labels(rel, extra))
    label = {}
    for x in rel.elements:
        label[(x, 0)] = x
        for i in range(1, copies[x]):
            label[(x, i)] = next(fresh)
    theta = {label[(x, i)]: x for x in rel.elements for i in range(copies[x])}
    pairs = {(label[(a, i)], label[(b, j)]) for (a, b), (i, j) in choice.items()}
    pairs |= {(y, y) for y in theta}
    return FiniteRelation(tuple(theta), frozenset(pairs)), theta


def _heuristic_split(rel, clasp_atoms):
    """Each clasp x becomes x (takes incoming arrows) and x' (sends outgoing arrows)."""
    copies = {x: 2 if x in clasp_atoms else 1 for x in rel.elements}
    choice = {}
    for a, b in rel.sorted_off_diagonal:
        choice[(a, b)] = (1 if a in clasp_atoms else 0, 0)
    y, theta = _materialize(rel, copies, choice)
    closed = _transitive_closure(set(y.pairs))
    return FiniteRelation(y.elements, frozenset(closed)), theta


class _SplitSearch:
    """Choose, for every off-diagonal pair (a, b), which copies of a and b carry it.

    Constraints: the chosen arrows plus loops form a transitive relation with
    no arrows inside a fibre and none over unrelated atoms, every transitive
    triple of X is realized by consecutive arrows, and 2-cycles lift to
    2-cycles.
    """

    def __init__(self, rel, copies, budget):
        self.rel = rel
        self.copies = copies
        self.budget = budget
        self.nodes = 0
        self.vars = list(rel.sorted_off_diagonal)
        self.pos = {v: i for i, v in enumerate(self.vars)}
        off = rel.off_diagonal
        self.checks = [[] for _ in self.vars]
        for (a, b) in self.vars:
            for c in rel.successors[b]:
                if c == b or (b, c) not in off:
                    continue
                vs = [(a, b), (b, c)]
                if a != c and (a, c) in off:
                    vs.append((a, c))
                self._add(vs, ("comp", a, b, c))
                if a != c and (a, c) in rel.pairs:
                    self._add([(a, b), (b, c)], ("lift", a, b, c))
                if a == c:
                    self._add([(a, b), (b, a)], ("cycle", a, b))

    def _add(self, vs, check):
        last = max(self.pos[v] for v in vs)
        self.checks[last].append(check)

    def _ok(self, check, rep):
        kind = check[0]
        if kind == "comp":
            _, a, b, c = check
            (i, j), (j2, k) = rep[(a, b)], rep[(b, c)]
            if j != j2:
                return True
            if a == c:
                return i == k
            if (a, c) not in self.rel.off_diagonal:
                return False
            return rep[(a, c)] == (i, k)
        if kind == "lift":
            _, a, b, c = check
            return rep[(a, b)][1] == rep[(b, c)][0]
        _, a, b = check
        i, j = rep[(a, b)]
        return rep[(b, a)] == (j, i)

    def run(self):
        rep = {}

        def rec(n):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"clasp splitting search exceeded {self.budget} nodes")
            if n == len(self.vars):
                return dict(rep)
            a, b = self.vars[n]
            for i in range(self.copies[a]):
                for j in range(self.copies[b]):
                    rep[(a, b)] = (i, j)
                    if all(self._ok(c, rep) for c in self.checks[n]):
                        found = rec(n + 1)
                        if found is not None:
                            return found
            rep.pop((a, b), None)
            return None

        return rec(0)


def _copy_layouts(rel, clasp_atoms, max_extra, min_extra=1):
    """Copy-count maps with min_extra..max_extra extra copies, clasps first, then any atom."""
    seen = set()
    for pool in (clasp_atoms, list(rel.elements)):
        for extra in range(min_extra, max_extra + 1):
            for combo in itertools.combinations_with_replacement(pool, extra):
                copies = {x: 1 for x in rel.elements}
                for x in combo:
                    copies[x] += 1
                key = tuple(sorted(copies.items()))
                if key not in seen:
                    seen.add(key)
                    yield copies


@dataclass(frozen=True)
class SplitResult:
    preorder: FiniteRelation
    compression: CompressionMap
    method: str


def split_clasps(rel: FiniteRelation, budget: int | None = None) -> SplitResult:
    """Find a preorder Y and a verified compression Y -> X for a stable relation without locked clasps.

    Tries the in/out split of every clasp first, then searches copy layouts
    with at most one extra atom per clasp, then larger layouts. The node
    budget is shared across all layouts.
    """
    budget = default_budget() if budget is None else budget
    bad = stability_witness(rel)
    if bad is not None:
        raise InputError(f"relation is not stable (witness {bad})")
    found = clasps(rel)
    locked = [x for x, kind in found if kind == "locked"]
    if locked:
        x = locked[0]
        raise InputError(f"{x} is a locked clasp (witness u,v,w,y = {locked_clasp_witness(rel, x)})")
    clasp_atoms = [x for x, _ in found]
    if not clasp_atoms:
        if not is_preorder(rel):
            raise InputError("relation without clasps should be a preorder")
        return SplitResult(rel, identity_compression(rel), "identity")

    y, theta = _heuristic_split(rel, clasp_atoms)
    if is_preorder(y) and not compression_violations(theta, y, rel):
        return SplitResult(y, verify_compression(theta, y, rel), "heuristic")

    # one extra copy per clasp first; past that, one copy per off-diagonal
    # arrow at a clasp always suffices in principle, so that caps the layouts
    bounded = len(clasp_atoms)
    cap = max(bounded, sum(len(rel.successors[x]) + len(rel.predecessors[x]) - 3
                           for x in clasp_atoms))
    nodes = 0
    for method, lo, hi in (("search", 1, bounded), ("extended search", bounded + 1, cap)):
        for copies in _copy_layouts(rel, clasp_atoms, hi, lo):
            search = _SplitSearch(rel, copies, budget - nodes)
            choice = search.run()
            nodes += search.nodes
            if choice is None:
                continue
            y, theta = _materialize(rel, copies, choice)
            if is_preorder(y) and not compression_violations(theta, y, rel):
                return SplitResult(y, verify_compression(theta, y, rel), method)
    raise BudgetExceeded(
        f"no preorder with at most {len(rel) + cap} atoms compresses onto {rel!r}"
    )


def compressions_isomorphic(cm1: CompressionMap, cm2: CompressionMap):
    """A relabeling pi of cm1's source onto cm2's source with theta2 o pi = theta1, or None."""
    if cm1.target != cm2.target or len(cm1.source) != len(cm2.source):
        return None
    s1, s2 = cm1.source, cm2.source
    fibres = {}
    for y in s2.elements:
        fibres.setdefault(cm2.theta[y], []).append(y)
    xs = list(s1.elements)
    options = [fibres.get(cm1.theta[x], []) for x in xs]
    for image in itertools.product(*options):
        if len(set(image)) != len(image):
            continue
        pi = dict(zip(xs, image))
        if all((pi[a], pi[b]) in s2.pairs for a, b in s1.pairs) and len(s1.pairs) == len(s2.pairs):
            return pi
    return None
