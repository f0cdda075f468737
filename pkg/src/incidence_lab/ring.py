"""Generalized incidence rings I(X, rho, R) over exact coefficient rings.

Elements are sparse maps from pairs of rho to nonzero coefficients. Products use
convolution over intervals, which is only associative when rho is balanced, so
:meth:`RingElement.__mul__` refuses unbalanced owners. :func:`convolve_raw`
skips that gate and exists for the associativity oracle.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from .errors import InputError
from .relation import FiniteRelation, balance_witness, is_reflexive, sort_pairs


class CoefficientRing:
    """Exact ring with unity. Values are plain Python numbers."""

    kind = "abstract"

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return self.coerce(a + b)

    def neg(self, a):
        return self.coerce(-a)

    def mul(self, a, b):
        return self.coerce(a * b)

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def coerce(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        return self.coerce(int(text))

    def format(self, value) -> str:
        return str(value)

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(tuple(sorted(self.descriptor().items())))

    def __repr__(self):
        return self.name

    @property
    def name(self) -> str:
        return self.kind


class Integers(CoefficientRing):
    kind = "int"

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise InputError(f"{value} is not an integer")
            value = value.numerator
        return int(value)

    @property
    def name(self):
        return "Z"


class IntegersMod(CoefficientRing):
    kind = "int_mod"

    def __init__(self, n: int):
        if n < 2:
            raise InputError("integers mod n need n >= 2")
        self.n = n

    def coerce(self, value):
        return int(value) % self.n

    def descriptor(self):
        return {"kind": self.kind, "n": self.n}

    @property
    def name(self):
        return f"Z/{self.n}"


class Rationals(CoefficientRing):
    kind = "rational"

    def coerce(self, value):
        return Fraction(value)

    def parse(self, text):
        return Fraction(text)

    @property
    def name(self):
        return "Q"


def ring_from_descriptor(desc: dict) -> CoefficientRing:
    kind = desc.get("kind")
    if kind == "int":
        return Integers()
    if kind == "int_mod":
        return IntegersMod(int(desc["n"]))
    if kind == "rational":
        return Rationals()
    raise InputError(f"unknown coefficient ring {desc!r}")


@lru_cache(maxsize=4096)
def _cached_balance(rel: FiniteRelation):
    return balance_witness(rel)


class RingElement:
    """Immutable sparse element; zero coefficients are never stored."""

    __slots__ = ("relation", "ring", "coefficients")

    def __init__(self, relation, ring, coefficients=None):
        clean = {}
        for pair, value in (coefficients or {}).items():
            pair = tuple(pair)
            if pair not in relation.pairs:
                raise InputError(f"support pair {pair} is not in the relation")
            value = ring.coerce(value)
            if not ring.is_zero(value):
                clean[pair] = value
        object.__setattr__(self, "relation", relation)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coefficients", MappingProxyType(clean))

    def __setattr__(self, name, value):
        raise AttributeError("ring elements are immutable")

    def __getitem__(self, pair):
        return self.coefficients.get(tuple(pair), self.ring.zero())

    @property
    def support(self) -> frozenset:
        return frozenset(self.coefficients)

    def items(self):
        """(pair, coefficient) in canonical pair order."""
        return [(p, self.coefficients[p]) for p in sort_pairs(self.coefficients)]

    def is_zero(self) -> bool:
        return not self.coefficients

    def _check_peer(self, other):
        if not isinstance(other, RingElement):
            raise InputError(f"expected a ring element, got {type(other).__name__}")
        if other.relation != self.relation:
            raise InputError("elements belong to different relations")
        if other.ring != self.ring:
            raise InputError(f"coefficient rings differ: {self.ring} vs {other.ring}")

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.relation == other.relation and self.ring == other.ring
                and dict(self.coefficients) == dict(other.coefficients))

    def __hash__(self):
        return hash((self.relation, frozenset(self.coefficients.items())))

    def __add__(self, other):
        self._check_peer(other)
        out = dict(self.coefficients)
        for p, v in other.coefficients.items():
            out[p] = self.ring.add(out[p], v) if p in out else v
        return RingElement(self.relation, self.ring, out)

    def __neg__(self):
        return RingElement(self.relation, self.ring,
                           {p: self.ring.neg(v) for p, v in self.coefficients.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r):
        r = self.ring.coerce(r)
        return RingElement(self.relation, self.ring,
                           {p: self.ring.mul(r, v) for p, v in self.coefficients.items()})

    def __mul__(self, other):
        self._check_peer(other)
        bad = _cached_balance(self.relation)
        if bad is not None:
            raise InputError(
                f"relation is not balanced (witness {bad}); convolution is not associative on it"
            )
        return convolve_raw(self, other)

    def __repr__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for (x, y), v in self.items():
            coef = "" if v == self.ring.one() else f"{self.ring.format(v)}*"
            terms.append(f"{coef}e[{x},{y}]")
        return " + ".join(terms)


def convolve_raw(f: RingElement, g: RingElement) -> RingElement:
    """(fg)(x, y) = sum over z in [x, y] of f(x, z) g(z, y), for x rho y; no balance check."""
    rel = f.relation
    ring = f.ring
    by_source = {}
    for (z, y), v in g.coefficients.items():
        by_source.setdefault(z, []).append((y, v))
    out = {}
    for (x, z), a in f.coefficients.items():
        for y, b in by_source.get(z, ()):
            if (x, y) in rel.pairs:
                term = ring.mul(a, b)
                out[(x, y)] = ring.add(out[(x, y)], term) if (x, y) in out else term
    return RingElement(rel, ring, out)


def convolve(f: RingElement, g: RingElement) -> RingElement:
    return f * g


def add(f: RingElement, g: RingElement) -> RingElement:
    return f + g


def scalar_mul(r, f: RingElement) -> RingElement:
    return f.scale(r)


def negate(f: RingElement) -> RingElement:
    return -f


def zero(rel: FiniteRelation, ring: CoefficientRing) -> RingElement:
    return RingElement(rel, ring, {})


def identity_e(rel: FiniteRelation, ring: CoefficientRing) -> RingElement:
    if not is_reflexive(rel):
        raise InputError("the identity element needs a reflexive relation")
    return RingElement(rel, ring, {(x, x): ring.one() for x in rel.elements})


def standard_unit(rel: FiniteRelation, ring: CoefficientRing, x, y) -> RingElement:
    if (x, y) not in rel.pairs:
        raise InputError(f"({x}, {y}) is not in the relation")
    return RingElement(rel, ring, {(x, y): ring.one()})


def all_ones(rel: FiniteRelation, ring: CoefficientRing) -> RingElement:
    return RingElement(rel, ring, {p: ring.one() for p in rel.pairs})


def sandwich_check(f: RingElement, x, y) -> bool:
    """Whether f(x, y) e_xy == e_xx f e_yy."""
    rel, ring = f.relation, f.ring
    if (x, y) not in rel.pairs:
        raise InputError(f"({x}, {y}) is not in the relation")
    left = standard_unit(rel, ring, x, y).scale(f[(x, y)])
    right = standard_unit(rel, ring, x, x) * f * standard_unit(rel, ring, y, y)
    return left == right


def unit_product_rule(rel: FiniteRelation, ring: CoefficientRing, a, b, c, d) -> RingElement:
    """Closed form for e_ab e_cd: e_ad when b == c and a rho d, else zero."""
    if b == c and (a, d) in rel.pairs:
        return standard_unit(rel, ring, a, d)
    return zero(rel, ring)


def unit_associativity_witness(rel: FiniteRelation, ring: CoefficientRing | None = None):
    """Brute-force associativity of ungated convolution on chains of units.

    Checks (e_ab e_bc) e_cd == e_ab (e_bc e_cd) for every a rho b, b rho c,
    c rho d. Products of non-consecutive units vanish on both sides, so these
    are the only triples that can disagree. Returns the first failing
    ``((a, b), (b, c), (c, d))`` or None.
    """
    if not is_reflexive(rel):
        raise InputError("the associativity oracle needs a reflexive relation")
    ring = ring or Integers()
    units = {p: RingElement(rel, ring, {p: 1}) for p in rel.pairs}
    for a in rel.elements:
        for b in rel.successors[a]:
            ab = units[(a, b)]
            for c in rel.successors[b]:
                bc = units[(b, c)]
                left_ab_bc = convolve_raw(ab, bc)
                for d in rel.successors[c]:
                    cd = units[(c, d)]
                    left = convolve_raw(left_ab_bc, cd)
                    right = convolve_raw(ab, convolve_raw(bc, cd))
                    if left != right:
                        return ((a, b), (b, c), (c, d))
    return None


def unit_associativity_oracle(rel: FiniteRelation, ring: CoefficientRing | None = None) -> bool:
    return unit_associativity_witness(rel, ring) is None
