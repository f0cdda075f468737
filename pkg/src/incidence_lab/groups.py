"""Grading semigroups: finite Cayley tables and the infinite cyclic group.

Elements are plain hashable values (ints for cyclic groups, strings for table
groups). ``parse``/``format`` translate to and from the string labels used in
files.
"""

from __future__ import annotations

import itertools
import re

from .errors import InputError


class Semigroup:
    name = "G"
    is_finite = True

    def op(self, a, b):
        raise NotImplementedError

    @property
    def identity(self):
        return None

    def inverse(self, a):
        raise InputError(f"{self.name} has no inverses")

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    is_group = False
    is_cancellative = False

    def product(self, values):
        it = iter(values)
        acc = next(it)
        for v in it:
            acc = self.op(acc, v)
        return acc

    def sort_key(self, value):
        return value

    def parse(self, text):
        raise NotImplementedError

    def format(self, value) -> str:
        return str(value)

    def __repr__(self):
        return self.name


class CayleyTable(Semigroup):
    """Finite semigroup given by its multiplication table.

    Associativity is checked exhaustively on construction and the monoid,
    group and cancellativity flags are derived from the table.
    """

    def __init__(self, elements, table, name="G", identity=None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements) or not self.elements:
            raise InputError("table elements must be distinct and nonempty")
        n = len(self.elements)
        if len(table) != n or any(len(row) != n for row in table):
            raise InputError("Cayley table must be square over the element list")
        idx = {a: i for i, a in enumerate(self.elements)}
        self._table = {}
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                c = table[i][j]
                if c not in idx:
                    raise InputError(f"table entry {c!r} is not an element")
                self._table[(a, b)] = c
        self.name = name
        self._index = idx
        bad = self.associativity_witness()
        if bad is not None:
            raise InputError(f"{name} is not associative at {bad}")
        found = [e for e in self.elements
                 if all(self._table[(e, a)] == a == self._table[(a, e)] for a in self.elements)]
        self._identity = found[0] if found else None
        if identity is not None and identity != self._identity:
            raise InputError(f"{identity!r} is not a two-sided identity of {name}")
        rows = all(len({self._table[(a, b)] for b in self.elements}) == n for a in self.elements)
        cols = all(len({self._table[(a, b)] for a in self.elements}) == n for b in self.elements)
        self.is_cancellative = rows and cols
        self._inverses = {}
        if self._identity is not None:
            for a in self.elements:
                inv = [b for b in self.elements
                       if self._table[(a, b)] == self._identity == self._table[(b, a)]]
                if inv:
                    self._inverses[a] = inv[0]
        self.is_group = self._identity is not None and len(self._inverses) == n

    def associativity_witness(self):
        t = self._table
        for a, b, c in itertools.product(self.elements, repeat=3):
            if t[(t[(a, b)], c)] != t[(a, t[(b, c)])]:
                return (a, b, c)
        return None

    def __len__(self):
        return len(self.elements)

    def op(self, a, b):
        return self._table[(a, b)]

    @property
    def identity(self):
        return self._identity

    def inverse(self, a):
        if a not in self._inverses:
            raise InputError(f"{a!r} has no inverse in {self.name}")
        return self._inverses[a]

    def sort_key(self, value):
        return self._index[value]

    def idempotents(self):
        return tuple(a for a in self.elements if self.op(a, a) == a)

    def parse(self, text):
        for a in self.elements:
            if self.format(a) == str(text):
                return a
        raise InputError(f"{text!r} is not an element of {self.name}")

    def table_rows(self):
        return [[self.op(a, b) for b in self.elements] for a in self.elements]


def cyclic(n: int) -> CayleyTable:
    """Z_n written additively on 0..n-1."""
    if n < 1:
        raise InputError("cyclic group order must be positive")
    xs = list(range(n))
    return CayleyTable(xs, [[(a + b) % n for b in xs] for a in xs], name=f"Z{n}")


def klein_four() -> CayleyTable:
    xs = ["e", "a", "b", "c"]
    bits = {"e": 0, "a": 1, "b": 2, "c": 3}
    back = {v: k for k, v in bits.items()}
    return CayleyTable(xs, [[back[bits[x] ^ bits[y]] for y in xs] for x in xs], name="V4")


def symmetric3() -> CayleyTable:
    """S3 as permutations of (0, 1, 2); labels name rotations r and reflections s."""
    perms = {
        "e": (0, 1, 2), "r": (1, 2, 0), "r2": (2, 0, 1),
        "s": (1, 0, 2), "sr": (0, 2, 1), "sr2": (2, 1, 0),
    }
    names = {v: k for k, v in perms.items()}
    xs = list(perms)

    # (p*q)(i) = p(q(i)): apply q first
    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    table = [[names[compose(perms[a], perms[b])] for b in xs] for a in xs]
    return CayleyTable(xs, table, name="S3")


def semilattice2() -> CayleyTable:
    """{1, z} with z absorbing: a commutative monoid with a non-identity idempotent."""
    return CayleyTable(["1", "z"], [["1", "z"], ["z", "z"]], name="SL2")


def trivial_group() -> CayleyTable:
    return CayleyTable(["1"], [["1"]], name="1")


class InfiniteCyclic(Semigroup):
    """The free group on one generator g, stored as the exponent k of g^k and written gk."""

    name = "Zinf"
    is_finite = False
    is_group = True
    is_cancellative = True

    def op(self, a, b):
        return a + b

    @property
    def identity(self):
        return 0

    def inverse(self, a):
        return -a

    def parse(self, text):
        text = str(text).strip()
        m = re.fullmatch(r"g\^?(-?\d+)|(-?\d+)", text)
        if m is None:
            if text == "g":
                return 1
            raise InputError(f"{text!r} is not a power of g")
        return int(m.group(1) if m.group(1) is not None else m.group(2))

    def format(self, value):
        return f"g{value}"


_BUILTIN = {
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "S3": symmetric3,
    "V4": klein_four,
    "K4": klein_four,
    "SL2": semilattice2,
    "Zinf": InfiniteCyclic,
    "1": trivial_group,
}

DEFAULT_TEST_GROUPS = ("Z2", "Z3", "S3")


def by_name(name: str) -> Semigroup:
    """Built-in group by short name: Z<n>, S3, V4 (alias K4), SL2, Zinf."""
    if name in _BUILTIN:
        return _BUILTIN[name]()
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        return cyclic(int(m.group(1)))
    raise InputError(f"unknown group {name!r}")


def from_descriptor(desc: dict) -> Semigroup:
    kind = desc.get("kind")
    if kind == "cyclic":
        return cyclic(int(desc["n"]))
    if kind == "infinite_cyclic":
        return InfiniteCyclic()
    if kind == "named":
        return by_name(desc["name"])
    if kind == "table":
        return CayleyTable(
            [str(e) for e in desc["elements"]],
            [[str(c) for c in row] for row in desc["table"]],
            name=desc.get("name", "G"),
            identity=None if desc.get("identity") is None else str(desc["identity"]),
        )
    raise InputError(f"unknown group descriptor {desc!r}")


def to_descriptor(group: Semigroup) -> dict:
    if isinstance(group, InfiniteCyclic):
        return {"kind": "infinite_cyclic"}
    if group.name.startswith("Z") and group.name[1:].isdigit():
        return {"kind": "cyclic", "n": int(group.name[1:])}
    return {
        "kind": "table",
        "name": group.name,
        "elements": [group.format(a) for a in group.elements],
        "identity": None if group.identity is None else group.format(group.identity),
        "table": [[group.format(c) for c in row] for row in group.table_rows()],
    }
