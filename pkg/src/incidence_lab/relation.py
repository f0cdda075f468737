"""Finite relations and the structural predicates used throughout the package.

A :class:`FiniteRelation` is a ground set plus a set of ordered pairs. Atoms are
ints or strings; every iteration and every returned collection follows one
canonical order (ints before strings, each sorted naturally), so results are
reproducible and witnesses are the lexicographically least ones.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, NamedTuple

from .errors import InputError

Atom = Hashable
Pair = tuple

_INT_RE = re.compile(r"-?\d+\Z")


def atom_key(atom):
    if isinstance(atom, bool):
        raise InputError(f"booleans are not valid atoms: {atom!r}")
    if isinstance(atom, int):
        return (0, atom, "")
    if isinstance(atom, str):
        return (1, 0, atom)
    raise InputError(f"atoms must be ints or strings, got {atom!r}")


def parse_atom(text):
    """Integer-looking strings become ints; everything else stays a string."""
    if isinstance(text, int) and not isinstance(text, bool):
        return text
    text = str(text)
    return int(text) if _INT_RE.match(text) else text


def pair_key(pair):
    return tuple(atom_key(a) for a in pair)


def sort_atoms(atoms):
    return sorted(atoms, key=atom_key)


def sort_pairs(pairs):
    return sorted(pairs, key=pair_key)


@dataclass(frozen=True)
class FiniteRelation:
    elements: tuple
    pairs: frozenset

    def __post_init__(self):
        elements = tuple(sort_atoms(set(self.elements)))
        pairs = frozenset((a, b) for a, b in self.pairs)
        known = set(elements)
        for a, b in pairs:
            if a not in known or b not in known:
                raise InputError(f"pair ({a}, {b}) mentions an atom outside the ground set")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def build(cls, elements: Iterable, pairs: Iterable, reflexive_closure: bool = False):
        elements = tuple(elements)
        pairs = set(map(tuple, pairs))
        if reflexive_closure:
            pairs |= {(x, x) for x in elements}
        return cls(elements, frozenset(pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        off = ", ".join(f"({a},{b})" for a, b in self.sorted_off_diagonal)
        loops = "refl" if is_reflexive(self) else "non-refl"
        return f"FiniteRelation(X={list(self.elements)}, {loops}, off=[{off}])"

    def related(self, x, y) -> bool:
        return (x, y) in self.pairs

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def sorted_pairs(self) -> tuple:
        return tuple(sort_pairs(self.pairs))

    @cached_property
    def off_diagonal(self) -> frozenset:
        return frozenset((a, b) for a, b in self.pairs if a != b)

    @cached_property
    def sorted_off_diagonal(self) -> tuple:
        return tuple(p for p in self.sorted_pairs if p[0] != p[1])

    @cached_property
    def successors(self) -> dict:
        out = {x: [] for x in self.elements}
        for a, b in self.sorted_pairs:
            out[a].append(b)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def predecessors(self) -> dict:
        out = {x: [] for x in self.elements}
        for a, b in self.sorted_pairs:
            out[b].append(a)
        return {x: tuple(sort_atoms(v)) for x, v in out.items()}

    def check_atom(self, x):
        if x not in self.index:
            raise InputError(f"unknown atom {x!r}")

    def relabel(self, mapping: dict) -> "FiniteRelation":
        return FiniteRelation(
            tuple(mapping[x] for x in self.elements),
            frozenset((mapping[a], mapping[b]) for a, b in self.pairs),
        )


# -- constructors ------------------------------------------------------------

def chain(n: int, start: int = 1) -> FiniteRelation:
    """Total order start < start+1 < ... (reflexive)."""
    xs = range(start, start + n)
    return FiniteRelation.build(xs, [(a, b) for a in xs for b in xs if a <= b])


def antichain(n: int, start: int = 1) -> FiniteRelation:
    xs = range(start, start + n)
    return FiniteRelation.build(xs, [], reflexive_closure=True)


def reflexive_relations(n: int) -> Iterator[FiniteRelation]:
    """Every reflexive relation on atoms 1..n, in bitmask order over the off-diagonal pairs."""
    xs = list(range(1, n + 1))
    slots = [(a, b) for a in xs for b in xs if a != b]
    loops = [(x, x) for x in xs]
    for mask in range(1 << len(slots)):
        chosen = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        yield FiniteRelation(tuple(xs), frozenset(loops + chosen))


def isomorphisms(r1: FiniteRelation, r2: FiniteRelation) -> Iterator[dict]:
    """All bijections X1 -> X2 carrying r1 exactly onto r2 (brute force; small sets only)."""
    if len(r1) != len(r2) or len(r1.pairs) != len(r2.pairs):
        return
    for image in itertools.permutations(r2.elements):
        m = dict(zip(r1.elements, image))
        if all((m[a], m[b]) in r2.pairs for a, b in r1.pairs):
            yield m


def is_isomorphic(r1, r2) -> bool:
    return next(isomorphisms(r1, r2), None) is not None


# -- basic predicates --------------------------------------------------------

def is_reflexive(rel: FiniteRelation) -> bool:
    return all((x, x) in rel.pairs for x in rel.elements)


def interval(rel: FiniteRelation, x, y) -> tuple:
    """The atoms z with x rho z and z rho y, in canonical order."""
    rel.check_atom(x)
    rel.check_atom(y)
    return tuple(z for z in rel.successors[x] if (z, y) in rel.pairs)


class TransitiveTriple(NamedTuple):
    x: Atom
    y: Atom
    z: Atom


def transitive_triples(rel: FiniteRelation) -> tuple:
    """All (x, y, z) with x rho y, y rho z and x rho z, lexicographically sorted."""
    out = []
    for x in rel.elements:
        for y in rel.successors[x]:
            for z in rel.successors[y]:
                if (x, z) in rel.pairs:
                    out.append(TransitiveTriple(x, y, z))
    return tuple(out)


def is_transitive(rel: FiniteRelation) -> bool:
    return transitivity_witness(rel) is None


def transitivity_witness(rel: FiniteRelation):
    for x in rel.elements:
        for y in rel.successors[x]:
            for z in rel.successors[y]:
                if (x, z) not in rel.pairs:
                    return (x, y, z)
    return None


def is_antisymmetric(rel: FiniteRelation) -> bool:
    return all(a == b or (b, a) not in rel.pairs for a, b in rel.pairs)


def is_preorder(rel: FiniteRelation) -> bool:
    return is_reflexive(rel) and is_transitive(rel)


def is_partial_order(rel: FiniteRelation) -> bool:
    return is_preorder(rel) and is_antisymmetric(rel)


def is_connected(rel: FiniteRelation) -> bool:
    """Connectivity of the underlying undirected graph (the empty set counts as connected)."""
    if not rel.elements:
        return True
    adj = {x: set() for x in rel.elements}
    for a, b in rel.pairs:
        adj[a].add(b)
        adj[b].add(a)
    seen = {rel.elements[0]}
    stack = [rel.elements[0]]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(rel.elements)


def is_chain(rel: FiniteRelation, atoms: Iterable) -> bool:
    atoms = list(atoms)
    return all((a, b) in rel.pairs or (b, a) in rel.pairs for a, b in itertools.combinations(atoms, 2))


def is_antichain(rel: FiniteRelation, atoms: Iterable) -> bool:
    atoms = list(atoms)
    return all((a, b) not in rel.pairs and (b, a) not in rel.pairs
               for a, b in itertools.combinations(atoms, 2))


def minimal_connectivity_witness(rel: FiniteRelation):
    """None if rel is minimally connected, else a reason string and the offending interval."""
    if not is_partial_order(rel):
        return ("not a partial order", None)
    if not is_connected(rel):
        return ("not connected", None)
    for x, y in rel.sorted_pairs:
        if not is_chain(rel, interval(rel, x, y)):
            return ("interval is not a chain", (x, y))
    return None


def is_minimally_connected(rel: FiniteRelation) -> bool:
    return minimal_connectivity_witness(rel) is None


# -- balance, stability, clasps ---------------------------------------------

def balance_witness(rel: FiniteRelation):
    """Least violation of balance, or None.

    A missing loop is reported as the 1-tuple ``(x,)``. Otherwise returns the
    lexicographically least ``(w, x, y, z)`` with w rho x, x rho y, y rho z,
    w rho z for which ``w rho y`` and ``x rho z`` disagree.
    """
    for x in rel.elements:
        if (x, x) not in rel.pairs:
            return (x,)
    pairs = rel.pairs
    succ = rel.successors
    for w in rel.elements:
        for x in succ[w]:
            for y in succ[x]:
                wy = (w, y) in pairs
                for z in succ[y]:
                    if (w, z) in pairs and wy != ((x, z) in pairs):
                        return (w, x, y, z)
    return None


def is_balanced(rel: FiniteRelation) -> bool:
    return balance_witness(rel) is None


def stability_witness(rel: FiniteRelation):
    """None if stable; else a balance witness, or distinct (a, b, c, d) with the five premises but not a rho d."""
    bad = balance_witness(rel)
    if bad is not None:
        return bad
    pairs = rel.pairs
    off = rel.off_diagonal
    for a in rel.elements:
        for b in rel.successors[a]:
            if b == a:
                continue
            for c in rel.successors[b]:
                if c in (a, b) or (a, c) not in off:
                    continue
                for d in rel.successors[c]:
                    if d in (a, b, c):
                        continue
                    if (b, d) in pairs and (a, d) not in pairs:
                        return (a, b, c, d)
    return None


def is_stable(rel: FiniteRelation) -> bool:
    return stability_witness(rel) is None


def _is_clasp(rel, x) -> bool:
    pairs = rel.pairs
    ins = [w for w in rel.predecessors[x] if w != x]
    outs = [y for y in rel.successors[x] if y != x]
    return any((w, y) not in pairs for w in ins for y in outs)


def locked_clasp_witness(rel: FiniteRelation, x):
    """(u, v, w, y) locking x, or None.

    Requires (w, y) outside rho and (u, x, y), (u, x, v), (w, x, v) transitive
    triples, with u, v, w, y all different from x.
    """
    pairs = rel.pairs
    ins = [a for a in rel.predecessors[x] if a != x]
    outs = [b for b in rel.successors[x] if b != x]
    for u in ins:
        for v in outs:
            if (u, v) not in pairs:
                continue
            for w in ins:
                if (w, v) not in pairs:
                    continue
                for y in outs:
                    if (u, y) in pairs and (w, y) not in pairs:
                        return (u, v, w, y)
    return None


def clasps(rel: FiniteRelation) -> tuple:
    """Every clasp with its kind, as ``(atom, "locked" | "unlocked")`` in canonical order."""
    out = []
    for x in rel.elements:
        if _is_clasp(rel, x):
            kind = "locked" if locked_clasp_witness(rel, x) is not None else "unlocked"
            out.append((x, kind))
    return tuple(out)


# -- orders ------------------------------------------------------------------

def hasse_arrows(rel: FiniteRelation) -> tuple:
    """Covering pairs a < b of a partial order, sorted."""
    if not is_partial_order(rel):
        raise InputError("Hasse arrows need a partial order")
    off = rel.off_diagonal
    out = []
    for a, b in rel.sorted_off_diagonal:
        if not any((a, c) in off and (c, b) in off for c in rel.elements):
            out.append((a, b))
    return tuple(out)


class Quotient(NamedTuple):
    relation: FiniteRelation
    class_of: dict
    classes: dict
    representatives: tuple


def paired_quotient(rel: FiniteRelation, representatives: Iterable | None = None) -> Quotient:
    """Collapse mutually related atoms of a preorder.

    Classes are labelled by their representative (default: least member), so
    the quotient partial order lives on the representative set.
    """
    if not is_preorder(rel):
        raise InputError("paired quotient needs a preorder")
    classes = {}
    class_of = {}
    for x in rel.elements:
        if x in class_of:
            continue
        members = tuple(y for y in rel.successors[x] if (y, x) in rel.pairs)
        for y in members:
            class_of[y] = members
        classes[members] = None
    chosen = {}
    if representatives is not None:
        for p in representatives:
            rel.check_atom(p)
            cls = class_of[p]
            if cls in chosen:
                raise InputError(f"two representatives given for class {list(cls)}")
            chosen[cls] = p
        if len(chosen) != len(classes):
            raise InputError("representatives must hit every paired class exactly once")
    else:
        chosen = {cls: cls[0] for cls in classes}
    rep_of = {x: chosen[class_of[x]] for x in rel.elements}
    reps = tuple(sort_atoms(chosen.values()))
    qpairs = {(rep_of[a], rep_of[b]) for a, b in rel.pairs}
    quotient = FiniteRelation(reps, frozenset(qpairs))
    return Quotient(quotient, rep_of, {chosen[c]: c for c in classes}, reps)


def maximal_chains(poset: FiniteRelation) -> list:
    """Maximal chains of a finite partial order as tuples from bottom to top."""
    arrows = hasse_arrows(poset)
    up = {x: [] for x in poset.elements}
    has_lower = set()
    for a, b in arrows:
        up[a].append(b)
        has_lower.add(b)
    out = []

    def walk(path):
        nexts = up[path[-1]]
        if not nexts:
            out.append(tuple(path))
        for n in nexts:
            walk(path + [n])

    for x in poset.elements:
        if x not in has_lower:
            walk([x])
    return out


def _poset_view(rel):
    if not is_preorder(rel):
        raise InputError("crosscuts are defined for preorders")
    if is_antisymmetric(rel):
        return rel
    return paired_quotient(rel).relation


def is_crosscut(rel: FiniteRelation, atoms: Iterable) -> bool:
    """Antichain, comparable to everything, and meeting every maximal chain (of the paired quotient)."""
    poset = _poset_view(rel)
    if poset is not rel:
        rep = paired_quotient(rel).class_of
        atoms = {rep[a] for a in atoms}
    atoms = set(atoms)
    if not atoms or not is_antichain(poset, atoms):
        return False
    for x in poset.elements:
        if not any((x, a) in poset.pairs or (a, x) in poset.pairs for a in atoms):
            return False
    return all(atoms.intersection(c) for c in maximal_chains(poset))


def crosscuts(rel: FiniteRelation, max_len: int) -> list:
    """All crosscuts of size <= max_len, as sorted tuples of class representatives, ordered by (size, lex)."""
    poset = _poset_view(rel)
    chains = [set(c) for c in maximal_chains(poset)]
    out = []
    for k in range(1, max_len + 1):
        for combo in itertools.combinations(poset.elements, k):
            if not is_antichain(poset, combo):
                continue
            s = set(combo)
            if not all(any((x, a) in poset.pairs or (a, x) in poset.pairs for a in s)
                       for x in poset.elements):
                continue
            if all(s & c for c in chains):
                out.append(combo)
    return out


def min_crosscut_length(rel: FiniteRelation) -> int:
    poset = _poset_view(rel)
    for k in range(1, len(poset) + 1):
        if crosscuts(poset, k):
            return k
    return 0
