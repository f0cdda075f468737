"""Relation homomorphisms and the good gradings they induce.

A homomorphism sends each pair of rho to a semigroup element so that
Phi(x, y) Phi(y, z) = Phi(x, z) on every transitive triple. The induced grading
puts f in degree a when every pair in the support of f has degree a; components
are kept as the degree map itself rather than materialized submodules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import InputError, ValidationError
from .groups import InfiniteCyclic, Semigroup
from .relation import FiniteRelation, chain, transitive_triples
from .ring import CoefficientRing, Integers, RingElement, convolve_raw, standard_unit


class RelationHomomorphism:
    """A validated map rho -> G. Build through :func:`verify_homomorphism`."""

    __slots__ = ("relation", "group", "values")

    def __init__(self, relation, group, values):
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "values", MappingProxyType(dict(values)))

    def __setattr__(self, name, value):
        raise AttributeError("homomorphisms are immutable")

    def __getitem__(self, pair):
        return self.values[tuple(pair)]

    def __eq__(self, other):
        if not isinstance(other, RelationHomomorphism):
            return NotImplemented
        return (self.relation == other.relation and self.group.name == other.group.name
                and dict(self.values) == dict(other.values))

    def __hash__(self):
        return hash(frozenset(self.values.items()))

    @property
    def image(self) -> tuple:
        return tuple(sorted(set(self.values.values()), key=self.group.sort_key))

    def restrict(self, pairs) -> dict:
        return {tuple(p): self.values[tuple(p)] for p in pairs}

    def items(self):
        return [(p, self.values[p]) for p in self.relation.sorted_pairs]

    def __repr__(self):
        fmt = self.group.format
        body = ", ".join(f"{a},{b}->{fmt(v)}" for (a, b), v in self.items() if a != b)
        return f"Phi[{self.group.name}]({body})"


def homomorphism_witness(values: dict, rel: FiniteRelation, group: Semigroup):
    """First transitive triple violating the homomorphism law, or None.

    Raises InputError when ``values`` is not defined on all of rho.
    """
    missing = [p for p in rel.sorted_pairs if p not in values]
    if missing:
        raise InputError(f"map is not total on the relation; missing {missing[0]}")
    extra = [p for p in values if tuple(p) not in rel.pairs]
    if extra:
        raise InputError(f"map assigns a value to {extra[0]}, which is not in the relation")
    for x, y, z in transitive_triples(rel):
        if group.op(values[(x, y)], values[(y, z)]) != values[(x, z)]:
            return (x, y, z)
    return None


def verify_homomorphism(values: dict, rel: FiniteRelation, group: Semigroup) -> RelationHomomorphism:
    values = {tuple(p): v for p, v in values.items()}
    bad = homomorphism_witness(values, rel, group)
    if bad is not None:
        x, y, z = bad
        raise ValidationError(
            f"Phi({x},{y}) Phi({y},{z}) != Phi({x},{z}) in {group.name}", witness=bad
        )
    return RelationHomomorphism(rel, group, values)


def constant_homomorphism(rel: FiniteRelation, group: Semigroup, value=None) -> RelationHomomorphism:
    value = group.identity if value is None else value
    if value is None:
        raise InputError(f"{group.name} has no identity; give the constant explicitly")
    return verify_homomorphism({p: value for p in rel.pairs}, rel, group)


@dataclass(frozen=True)
class DiagonalReport:
    values: dict
    idempotent: bool
    identity_required: bool
    identity_ok: bool

    @property
    def ok(self):
        return self.idempotent and (self.identity_ok or not self.identity_required)


def diagonal_constraint(hom: RelationHomomorphism) -> DiagonalReport:
    """Diagonal degrees must be idempotent; over a cancellative monoid they must be the identity."""
    g = hom.group
    diag = {x: hom[(x, x)] for x in hom.relation.elements if (x, x) in hom.relation.pairs}
    idem = all(g.op(v, v) == v for v in diag.values())
    required = g.is_monoid and g.is_cancellative
    ident = g.is_monoid and all(v == g.identity for v in diag.values())
    return DiagonalReport(diag, idem, required, ident)


@dataclass(frozen=True)
class InducedGrading:
    """Grading of I(X, rho, R) by a degree map on the pairs of rho.

    ``degrees`` is not validated here; :func:`induce_grading` is the checked
    constructor.
    """

    relation: FiniteRelation
    ring: CoefficientRing
    group: Semigroup
    degrees: MappingProxyType = field(repr=False)

    @property
    def support(self) -> tuple:
        return tuple(sorted(set(self.degrees.values()), key=self.group.sort_key))

    def components(self) -> dict:
        """Degree -> standard-unit pairs spanning that component."""
        out = {}
        for p in self.relation.sorted_pairs:
            out.setdefault(self.degrees[p], []).append(p)
        return {a: tuple(out[a]) for a in self.support}

    def in_component(self, f: RingElement, degree) -> bool:
        return all(self.degrees[p] == degree for p in f.coefficients)

    def degree(self, f: RingElement):
        """Degree of a nonzero homogeneous element; None for zero or inhomogeneous."""
        degs = {self.degrees[p] for p in f.coefficients}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, f: RingElement) -> bool:
        return len({self.degrees[p] for p in f.coefficients}) <= 1

    def unit_degree(self, x, y):
        return self.degrees[(x, y)]


def induce_grading(hom, ring: CoefficientRing | None = None) -> InducedGrading:
    if not getattr(hom, "image_is_finite", True):
        raise InputError(
            "homomorphism has unbounded image; only finite images induce a grading"
        )
    if not isinstance(hom, RelationHomomorphism):
        raise InputError("induce_grading needs a verified RelationHomomorphism")
    return InducedGrading(hom.relation, ring or Integers(), hom.group, hom.values)


def decompose(f: RingElement, grading: InducedGrading) -> list:
    """Split f into homogeneous parts, one per degree present, ordered by degree."""
    if f.relation != grading.relation:
        raise InputError("element and grading live on different relations")
    parts = {}
    for p, v in f.coefficients.items():
        parts.setdefault(grading.degrees[p], {})[p] = v
    order = sorted(parts, key=grading.group.sort_key)
    return [(a, RingElement(f.relation, f.ring, parts[a])) for a in order]


def component_closure_witness(grading: InducedGrading):
    """First pair of units whose nonzero product leaves S_{bc}, or None.

    Checking basis units suffices because multiplication is bilinear.
    """
    rel, ring, g = grading.relation, grading.ring, grading.group
    units = {p: standard_unit(rel, ring, *p) for p in rel.sorted_pairs}
    for (x, y) in rel.sorted_pairs:
        for w in rel.successors[y]:
            prod = convolve_raw(units[(x, y)], units[(y, w)])
            if prod.is_zero():
                continue
            want = g.op(grading.degrees[(x, y)], grading.degrees[(y, w)])
            if not grading.in_component(prod, want):
                return ((x, y), (y, w))
    return None


def verify_component_closure(grading: InducedGrading) -> bool:
    return component_closure_witness(grading) is None


def extract_homomorphism(grading: InducedGrading) -> RelationHomomorphism:
    """Recover Phi(x, y) = degree of e_xy from a good grading with every e_xx in degree 1."""
    g = grading.group
    if not g.is_monoid:
        raise InputError(f"{g.name} has no identity, so the diagonal condition cannot be stated")
    off = [x for x in grading.relation.elements if grading.degrees[(x, x)] != g.identity]
    if off:
        x = off[0]
        if g.is_cancellative:
            raise InputError(f"e_{x}{x} is not in the identity component, which no grading by "
                             f"a cancellative monoid allows")
        raise InputError(
            f"e_{x}{x} has degree {g.format(grading.degrees[(x, x)])}; extraction needs every "
            f"diagonal unit in the identity component, which {g.name} (not cancellative) "
            "does not force"
        )
    bad = component_closure_witness(grading)
    if bad is not None:
        raise ValidationError(f"components are not closed under products at {bad}", witness=bad)
    return verify_homomorphism(dict(grading.degrees), grading.relation, g)


@dataclass(frozen=True)
class InfiniteChainHomomorphism:
    """Phi on the naturals with Phi(m, m+1) = g^m; only its finite truncations are materialized."""

    image_is_finite = False

    def value(self, a: int, b: int) -> int:
        if a > b:
            raise InputError("naturals are ordered: need a <= b")
        return sum(range(a, b))


@dataclass(frozen=True)
class TruncatedNaturalsReport:
    k: int
    homomorphism: RelationHomomorphism
    image: tuple
    off_diagonal_image: tuple
    limit: InfiniteChainHomomorphism

    @property
    def image_size(self):
        return len(self.image)

    def lines(self):
        fmt = self.homomorphism.group.format
        yield f"k={self.k}: chain 1<...<{self.k}, phi(m,m+1)=g^m"
        yield f"  |Im Phi| = {len(self.image)} (off-diagonal {len(self.off_diagonal_image)})"
        yield "  off-diagonal image: {" + ", ".join(fmt(a) for a in self.off_diagonal_image) + "}"


def truncated_naturals_demo(k: int) -> TruncatedNaturalsReport:
    """Truncate the naturals to 1 < ... < k and extend phi(m, m+1) = g^m along chains.

    The image grows without bound in k, so the untruncated homomorphism has
    infinite image and induces no grading; ``report.limit`` stands for it and
    :func:`induce_grading` refuses it.
    """
    if k < 2:
        raise InputError("the truncated demo needs k >= 2")
    group = InfiniteCyclic()
    rel = chain(k)
    limit = InfiniteChainHomomorphism()
    values = {}
    for a, b in rel.sorted_pairs:
        acc = group.identity
        for m in range(a, b):
            acc = group.op(acc, m)
        values[(a, b)] = acc
    hom = verify_homomorphism(values, rel, group)
    off = tuple(sorted({v for (a, b), v in values.items() if a != b}))
    return TruncatedNaturalsReport(k, hom, hom.image, off, limit)
