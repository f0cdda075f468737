"""JSON file formats and canonical serialization.

Atoms, coefficients and group elements travel as strings. Integer-looking atom
labels are read back as ints. ``dumps`` sorts keys and uses fixed separators,
so equal objects always serialize to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .compression import CompressionMap, verify_compression
from .errors import InputError
from .grading import RelationHomomorphism, verify_homomorphism
from .groups import Semigroup, by_name, from_descriptor, to_descriptor
from .relation import FiniteRelation, parse_atom, sort_pairs
from .ring import CoefficientRing, Integers, RingElement, ring_from_descriptor


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(source):
    """Parse a path or an already-decoded object."""
    if isinstance(source, (dict, list)):
        return source
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _field(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    return data[key]


def _pair(item, where):
    if not isinstance(item, (list, tuple)) or len(item) != 2:
        raise InputError(f"{where}: expected a pair, got {item!r}")
    return parse_atom(item[0]), parse_atom(item[1])


# -- relations -----------------------------------------------------------------

def relation_from_json(data) -> FiniteRelation:
    data = load_json(data)
    elements = [parse_atom(x) for x in _field(data, "elements", "relation")]
    if len(set(elements)) != len(elements):
        raise InputError("relation: duplicate elements")
    pairs = [_pair(p, "relation") for p in _field(data, "pairs", "relation")]
    return FiniteRelation.build(elements, pairs, bool(data.get("reflexive_closure", False)))


def relation_to_json(rel: FiniteRelation) -> dict:
    return {
        "elements": [str(x) for x in rel.elements],
        "pairs": [[str(a), str(b)] for a, b in rel.sorted_pairs],
        "reflexive_closure": False,
    }


# -- ring elements ---------------------------------------------------------------

def element_from_json(data, rel: FiniteRelation) -> RingElement:
    data = load_json(data)
    ring = ring_from_descriptor(data.get("ring", {"kind": "int"}))
    coeffs = {}
    for entry in _field(data, "entries", "element"):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise InputError(f"element: expected [x, y, coefficient], got {entry!r}")
        pair = (parse_atom(entry[0]), parse_atom(entry[1]))
        if pair in coeffs:
            raise InputError(f"element: pair {pair} listed twice")
        try:
            coeffs[pair] = ring.parse(str(entry[2]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"element: bad coefficient {entry[2]!r} for {ring.name}") from exc
    return RingElement(rel, ring, coeffs)


def element_to_json(f: RingElement) -> dict:
    return {
        "ring": f.ring.descriptor(),
        "entries": [[str(x), str(y), f.ring.format(v)] for (x, y), v in f.items()],
    }


def ring_from_name(name: str | None) -> CoefficientRing:
    """'Z', 'Q' or 'Z/<n>' (also 'Zmod<n>')."""
    if name in (None, "Z", "int"):
        return Integers()
    if name in ("Q", "rational"):
        return ring_from_descriptor({"kind": "rational"})
    for prefix in ("Z/", "Zmod"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return ring_from_descriptor({"kind": "int_mod", "n": int(name[len(prefix):])})
    raise InputError(f"unknown coefficient ring {name!r}")


# -- groups and homomorphisms --------------------------------------------------

def group_from_spec(spec) -> Semigroup:
    """A built-in name (Z2, S3, ...), a descriptor dict, or a path to a descriptor file."""
    if isinstance(spec, Semigroup):
        return spec
    if isinstance(spec, dict):
        return from_descriptor(spec)
    if isinstance(spec, str) and Path(spec).is_file():
        return from_descriptor(load_json(spec))
    return by_name(str(spec))


def group_to_json(group: Semigroup) -> dict:
    return to_descriptor(group)


def hom_from_json(data, rel: FiniteRelation, group: Semigroup, partial: bool = False):
    """Read a homomorphism file; with ``partial`` return the raw dict without verifying."""
    data = load_json(data)
    values = {}
    for entry in _field(data, "values", "homomorphism"):
        if not isinstance(entry, (list, tuple)) or len(entry) != 3:
            raise InputError(f"homomorphism: expected [x, y, value], got {entry!r}")
        pair = (parse_atom(entry[0]), parse_atom(entry[1]))
        if pair not in rel.pairs:
            raise InputError(f"homomorphism: {pair} is not in the relation")
        values[pair] = group.parse(str(entry[2]))
    if partial:
        return values
    return verify_homomorphism(values, rel, group)


def values_to_json(values: dict, group: Semigroup) -> dict:
    return {"values": [[str(a), str(b), group.format(values[(a, b)])]
                       for a, b in sort_pairs(values)]}


def hom_to_json(hom: RelationHomomorphism) -> dict:
    return values_to_json(dict(hom.values), hom.group)


# -- compressions and subsets ----------------------------------------------------

def compression_map_from_json(data) -> dict:
    data = load_json(data)
    theta = {}
    for item in _field(data, "map", "compression"):
        x, y = _pair(item, "compression")
        if x in theta:
            raise InputError(f"compression: {x} mapped twice")
        theta[x] = y
    return theta


def compression_from_json(data, source: FiniteRelation, target: FiniteRelation) -> CompressionMap:
    return verify_compression(compression_map_from_json(data), source, target)


def compression_to_json(cm: CompressionMap) -> dict:
    return {"map": [[str(x), str(cm.theta[x])] for x in cm.source.elements]}


def subset_from_spec(spec) -> tuple:
    """A file holding ``{"subset": [[x, y], ...]}`` or a bare list, or inline text "1,2;2,3"."""
    if isinstance(spec, (list, tuple)):
        items = spec
    elif isinstance(spec, str) and Path(spec).is_file():
        data = load_json(spec)
        items = data["subset"] if isinstance(data, dict) and "subset" in data else data
    else:
        text = str(spec).strip()
        items = [] if not text else [chunk.split(",") for chunk in text.split(";")]
    if not isinstance(items, (list, tuple)):
        raise InputError("subset: expected a list of pairs")
    return tuple(sort_pairs({_pair([str(t).strip() for t in p], "subset") for p in items}))


def subset_to_json(subset) -> list:
    return [[str(a), str(b)] for a, b in sort_pairs(subset)]
