"""Command-line front end.

Exit codes: 0 success or true verdict, 1 false verdict (with a witness),
2 bad input, 3 budget exhausted. ``--json`` switches every report, errors
included, to canonical JSON on stdout.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .compression import (
    embedding_grading_witness,
    graded_embedding,
    induce_hom_through,
    split_clasps,
    transport_grading_set,
    verify_compression,
)
from .errors import BudgetExceeded, InputError, ValidationError
from .grading import (
    InducedGrading,
    component_closure_witness,
    decompose,
    extract_homomorphism,
    induce_grading,
    truncated_naturals_demo,
    verify_homomorphism,
)
from .gradingsets import (
    DEFAULT_TEST_GROUPS,
    ExtensionSolver,
    default_budget,
    grading_set_verdict,
    jones_lift,
    search_grading_set,
)
from .relation import (
    balance_witness,
    clasps,
    crosscuts,
    hasse_arrows,
    locked_clasp_witness,
    min_crosscut_length,
    minimal_connectivity_witness,
    paired_quotient,
    parse_atom,
    stability_witness,
    transitivity_witness,
)
from .ring import unit_associativity_witness
from .walkthrough import balance_oracle_sweep, fig2_pipeline

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Report:
    """What a subcommand produced: a JSON payload, human lines and an exit code."""

    def __init__(self, payload, lines, code=EXIT_OK):
        self.payload = payload
        self.lines = lines
        self.code = code


def _s(obj):
    """Atoms and nested tuples to JSON-friendly strings and lists."""
    if isinstance(obj, (tuple, list)):
        return [_s(x) for x in obj]
    if isinstance(obj, bool) or obj is None:
        return obj
    return str(obj)


def _pairs(pairs) -> str:
    return "{" + ", ".join(f"({a},{b})" for a, b in pairs) + "}"


def _groups(spec):
    spec = spec or ",".join(DEFAULT_TEST_GROUPS)
    return [io.group_from_spec(s.strip()) for s in spec.split(",") if s.strip()]


def _group(args):
    if args.group is None or "," in args.group:
        raise InputError("this subcommand needs exactly one --group")
    return io.group_from_spec(args.group)


def _atoms(text):
    return None if text is None else [parse_atom(t.strip()) for t in text.split(",") if t.strip()]


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for this subcommand")


# -- relation-level commands -----------------------------------------------------

def cmd_check(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    loop = next(((x, x) for x in rel.elements if (x, x) not in rel.pairs), None)
    trans = transitivity_witness(rel)
    anti = next(((a, b) for a, b in rel.sorted_off_diagonal if (b, a) in rel.pairs), None)
    minimal = minimal_connectivity_witness(rel)
    checks = {
        "reflexive": loop,
        "balanced": balance_witness(rel),
        "stable": stability_witness(rel),
        "preorder": loop or trans,
        "partial_order": loop or trans or anti,
        "minimally_connected": None if minimal is None else [minimal[0], _s(minimal[1])],
    }
    payload = {k: {"holds": w is None, "witness": _s(w)} for k, w in checks.items()}
    lines = [f"{k}: {'yes' if w is None else 'no'}" + ("" if w is None else f"  witness {w}")
             for k, w in checks.items()]
    code = EXIT_OK if all(w is None for w in checks.values()) else EXIT_FALSE
    return Report(payload, lines, code)


def cmd_clasps(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    found = clasps(rel)
    payload = {"clasps": [{"atom": str(x), "kind": kind,
                           "witness": _s(locked_clasp_witness(rel, x)) if kind == "locked" else None}
                          for x, kind in found]}
    lines = ["clasps = {" + ", ".join(f"({x}, {k})" for x, k in found) + "}"]
    return Report(payload, lines)


def cmd_hasse(args):
    _need(args, "relation")
    arrows = hasse_arrows(io.relation_from_json(args.relation))
    return Report({"arrows": _s(arrows)}, [f"Hasse arrows: {_pairs(arrows)}"])


def cmd_quotient(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    q = paired_quotient(rel, _atoms(args.representatives))
    classes = {str(p): _s(q.classes[p]) for p in q.representatives}
    payload = {"classes": classes, "quotient": io.relation_to_json(q.relation),
               "representatives": _s(q.representatives)}
    lines = [f"[{p}] = {{{', '.join(map(str, q.classes[p]))}}}" for p in q.representatives]
    lines.append(f"quotient order: {_pairs(q.relation.sorted_off_diagonal)}")
    return Report(payload, lines)


def cmd_crosscut(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    found = crosscuts(rel, args.max_len)
    shortest = min_crosscut_length(rel)
    payload = {"crosscuts": _s(found), "min_length": shortest, "max_len": args.max_len}
    lines = [f"crosscuts of length <= {args.max_len}: {[list(c) for c in found]}",
             f"shortest crosscut length: {shortest}"]
    return Report(payload, lines, EXIT_OK if found else EXIT_FALSE)


def cmd_assoc_oracle(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    bad = unit_associativity_witness(rel)
    balanced = balance_witness(rel) is None
    payload = {"unit_associative": bad is None, "witness": _s(bad), "balanced": balanced,
               "agree": balanced == (bad is None)}
    lines = [f"unit-associative: {bad is None}" + ("" if bad is None else f"  witness {bad}"),
             f"balanced: {balanced}"]
    return Report(payload, lines, EXIT_OK if bad is None else EXIT_FALSE)


# -- ring, homomorphisms, gradings -----------------------------------------------

def cmd_ring(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    if not args.element or len(args.element) != 2:
        raise InputError("give exactly two --element files")
    f, g = (io.element_from_json(e, rel) for e in args.element)
    out = f * g if args.op == "mul" else f + g
    return Report(io.element_to_json(out), [repr(out)])


def _hom_inputs(args):
    _need(args, "relation", "hom")
    return io.relation_from_json(args.relation), _group(args)


def cmd_hom(args):
    rel, group = _hom_inputs(args)
    if args.action == "verify":
        try:
            hom = io.hom_from_json(args.hom, rel, group)
        except ValidationError as exc:
            return Report({"homomorphism": False, "witness": _s(exc.witness)},
                          [f"not a homomorphism: {exc}"], EXIT_FALSE)
        return Report({"homomorphism": True}, [f"{hom!r} is a homomorphism"])
    fixed = io.hom_from_json(args.hom, rel, group, partial=True)
    found = ExtensionSolver(rel, group, args.budget).extensions(fixed, limit=args.limit)
    payload = {"count_at_least" if len(found) >= args.limit else "count": len(found),
               "extensions": [io.values_to_json(h, group) for h in found]}
    lines = [f"{len(found)} extension(s) found" + (" (limit reached)" if len(found) >= args.limit else "")]
    lines += [f"  {verify_homomorphism(h, rel, group)!r}" for h in found]
    return Report(payload, lines, EXIT_OK if found else EXIT_FALSE)


def _components_payload(grading):
    fmt = grading.group.format
    return {fmt(a): _s(pairs) for a, pairs in grading.components().items()}


def cmd_grade(args):
    rel, group = _hom_inputs(args)
    if args.action == "extract":
        degrees = io.hom_from_json(args.hom, rel, group, partial=True)
        missing = [p for p in rel.sorted_pairs if p not in degrees]
        if missing:
            raise InputError(f"degree map misses {missing[0]}")
        grading = InducedGrading(rel, io.ring_from_name(args.ring), group, degrees)
        try:
            hom = extract_homomorphism(grading)
        except ValidationError as exc:
            return Report({"extracted": None, "witness": _s(exc.witness)}, [str(exc)], EXIT_FALSE)
        return Report({"extracted": io.hom_to_json(hom)}, [f"Phi = {hom!r}"])
    grading = induce_grading(io.hom_from_json(args.hom, rel, group), io.ring_from_name(args.ring))
    if args.action == "induce":
        comps = _components_payload(grading)
        lines = [f"S_{a} = span {_pairs(ps)}" for a, ps in grading.components().items()]
        return Report({"components": comps}, lines)
    if args.action == "closure":
        bad = component_closure_witness(grading)
        payload = {"closed": bad is None, "witness": _s(bad)}
        line = "S_a S_b within S_ab: " + ("yes" if bad is None else f"no, at units {bad}")
        return Report(payload, [line], EXIT_OK if bad is None else EXIT_FALSE)
    _need(args, "element")
    f = io.element_from_json(args.element[0], rel)
    parts = decompose(f, grading)
    payload = {"parts": [{"degree": group.format(a), "element": io.element_to_json(p)}
                         for a, p in parts]}
    return Report(payload, [f"degree {group.format(a)}: {p!r}" for a, p in parts])


# -- grading sets ----------------------------------------------------------------------

def cmd_gset(args):
    _need(args, "relation")
    rel = io.relation_from_json(args.relation)
    groups = _groups(args.group)
    if args.action == "verify":
        _need(args, "subset")
        verdict = grading_set_verdict(rel, io.subset_from_spec(args.subset), groups, args.budget)
        lines = [f"sigma = {_pairs(verdict.subset)}"]
        lines += [f"  {g}: extendible={v['extendible']} essential={v['essential']}"
                  for g, v in verdict.groups.items()]
        if verdict.witness:
            lines.append(f"  witness: {verdict.witness}")
        return Report(verdict.as_json(), lines, EXIT_OK if verdict.ok else EXIT_FALSE)
    if args.action == "search":
        found = search_grading_set(rel, groups, args.max_size, args.budget)
        payload = {"subset": None if found is None else io.subset_to_json(found),
                   "groups": [g.name for g in groups], "certified_for": "listed groups"}
        line = "no grading set found" if found is None else f"sigma = {_pairs(found)}"
        return Report(payload, [line], EXIT_OK if found is not None else EXIT_FALSE)
    sigma = None if args.subset is None else io.subset_from_spec(args.subset)
    lift = jones_lift(rel, sigma, _atoms(args.representatives), groups, args.budget)
    payload = {"beta": io.subset_to_json(lift.beta), "gamma": io.subset_to_json(lift.gamma),
               "sigma": io.subset_to_json(lift.sigma),
               "quotient": io.relation_to_json(lift.quotient),
               "representatives": _s(lift.representatives)}
    lines = [f"quotient sigma (beta) = {_pairs(lift.beta)}",
             f"gamma = {_pairs(lift.gamma)}",
             f"sigma = {_pairs(lift.sigma)}"]
    return Report(payload, lines)


# -- compressions -------------------------------------------------------------------------

def _compression(args):
    _need(args, "relation", "source", "map")
    target = io.relation_from_json(args.relation)
    source = io.relation_from_json(args.source)
    theta = io.compression_map_from_json(args.map)
    return source, target, theta


def cmd_compress(args):
    if args.action == "split":
        _need(args, "relation")
        res = split_clasps(io.relation_from_json(args.relation), args.budget)
        payload = {"preorder": io.relation_to_json(res.preorder),
                   "map": io.compression_to_json(res.compression)["map"], "method": res.method}
        lines = [f"Y = {res.preorder!r}", f"theta = {res.compression!r}  ({res.method})"]
        return Report(payload, lines)
    source, target, theta = _compression(args)
    if args.action == "verify":
        try:
            verify_compression(theta, source, target)
        except ValidationError as exc:
            payload = {"compression": False, "condition": exc.condition, "witness": _s(exc.witness),
                       "violations": [{"condition": c, "message": m, "witness": _s(w)}
                                      for c, m, w in exc.violations]}
            return Report(payload, [f"not a compression: {exc}"], EXIT_FALSE)
        return Report({"compression": True}, ["theta is a compression"])
    cm = verify_compression(theta, source, target)
    if args.action == "induce":
        _need(args, "hom")
        group = _group(args)
        hom = induce_hom_through(io.hom_from_json(args.hom, target, group), cm)
        return Report(io.hom_to_json(hom), [f"Phi2 = {hom!r}"])
    if args.action == "embed":
        _need(args, "element")
        f = io.element_from_json(args.element[0], target)
        h = graded_embedding(f, cm)
        payload = {"embedded": io.element_to_json(h)}
        if args.hom is not None:
            group = _group(args)
            hom1 = io.hom_from_json(args.hom, target, group)
            g1 = induce_grading(hom1, f.ring)
            g2 = induce_grading(induce_hom_through(hom1, cm), f.ring)
            bad = embedding_grading_witness(cm, g1, g2)
            payload["graded"] = bad is None
            payload["witness"] = _s(bad)
        return Report(payload, [f"h(f) = {h!r}"])
    _need(args, "subset")
    direction = "reverse" if args.reverse else "forward"
    out, verdict = transport_grading_set(io.subset_from_spec(args.subset), cm, direction,
                                         _groups(args.group), budget=args.budget)
    payload = {"subset": io.subset_to_json(out), "verdict": verdict.as_json()}
    lines = [f"{direction} transport: {_pairs(out)}"]
    lines += [f"  {g}: extendible={v['extendible']} essential={v['essential']}"
              for g, v in verdict.groups.items()]
    return Report(payload, lines, EXIT_OK if verdict.ok else EXIT_FALSE)


# -- demos ------------------------------------------------------------------------------------

def cmd_demo(args):
    if args.name == "fig2":
        r = fig2_pipeline(_groups(args.group), args.budget)
        payload = {"clasps": [[str(x), k] for x, k in r.clasps],
                   "theta": [[str(x), str(y)] for x, y in r.theta.items()],
                   "quotient_sigma": io.subset_to_json(r.quotient_sigma),
                   "sigma2": io.subset_to_json(r.sigma2), "sigma1": io.subset_to_json(r.sigma1),
                   "verdicts": r.verdicts, "caveat": r.caveat}
        return Report(payload, [*r.steps, r.caveat], EXIT_OK if r.ok else EXIT_FALSE)
    if args.name == "infinite-support":
        sizes = []
        lines = []
        for k in range(2, args.max_k + 1):
            rep = truncated_naturals_demo(k)
            sizes.append({"k": k, "image_size": rep.image_size,
                          "off_diagonal_image": [rep.homomorphism.group.format(a)
                                                 for a in rep.off_diagonal_image]})
            lines.extend(rep.lines())
        increasing = all(a["image_size"] < b["image_size"] for a, b in zip(sizes, sizes[1:]))
        try:
            induce_grading(rep.limit)
            refused = False
        except InputError as exc:
            refused = True
            lines.append(f"untruncated limit: {exc}")
        lines.append(f"|Im Phi| strictly increasing in k: {increasing}")
        payload = {"truncations": sizes, "strictly_increasing": increasing,
                   "limit_refused": refused}
        return Report(payload, lines, EXIT_OK if increasing and refused else EXIT_FALSE)
    agree, total, bad = balance_oracle_sweep(4, args.workers)
    line = f"balanced ⟺ unit-associative: {agree}/{total} configurations agree"
    payload = {"agree": agree, "total": total,
               "disagreements": [io.relation_to_json(r) for r in bad]}
    return Report(payload, [line], EXIT_OK if agree == total else EXIT_FALSE)


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--budget", type=int, default=None,
                        help="search node budget (default: $INCIDENCE_LAB_BUDGET or 1000000)")
    common.add_argument("--workers", type=int, default=1, help="worker processes where supported")
    common.add_argument("--relation", help="relation JSON file")
    common.add_argument("--group",
                        help="group name (Z<n>, S3, V4, SL2, Zinf) or descriptor file; a comma "
                             "list where several groups are tested (default Z2,Z3,S3)")
    common.add_argument("--ring", default="Z", help="coefficient ring: Z, Q or Z/<n>")

    parser = argparse.ArgumentParser(prog="incidence-lab",
                                     description="Incidence rings of finite relations and their gradings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, parents=[common], help=help_text, **kw)
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "structural predicates with witnesses")
    add("clasps", cmd_clasps, "list clasps and whether they are locked")
    add("hasse", cmd_hasse, "covering arrows of a partial order")
    p = add("quotient", cmd_quotient, "paired quotient of a preorder")
    p.add_argument("--representatives", help="comma list, one atom per paired class")
    p = add("crosscut", cmd_crosscut, "crosscuts of a preorder's quotient")
    p.add_argument("--max-len", type=int, default=2)
    add("assoc-oracle", cmd_assoc_oracle, "brute-force associativity on standard units")

    p = add("ring", cmd_ring, "add or multiply two elements")
    p.add_argument("op", choices=["mul", "add"])
    p.add_argument("--element", action="append")

    p = add("hom", cmd_hom, "verify or extend a homomorphism")
    p.add_argument("action", choices=["verify", "extend"])
    p.add_argument("--hom")
    p.add_argument("--limit", type=int, default=2, help="stop after this many extensions")

    p = add("grade", cmd_grade, "induced gradings")
    p.add_argument("action", choices=["induce", "decompose", "closure", "extract"])
    p.add_argument("--hom", help="homomorphism file (for extract: the degree of every e_xy)")
    p.add_argument("--element", action="append")

    p = add("gset", cmd_gset, "grading sets")
    p.add_argument("action", choices=["verify", "search", "jones-lift"])
    p.add_argument("--subset", help="file or inline 'x,y;x,y' (jones-lift: grading set of the quotient)")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--representatives", help="comma list for jones-lift")

    p = add("compress", cmd_compress, "compression maps")
    p.add_argument("action", choices=["verify", "induce", "embed", "transport", "split"])
    p.add_argument("--source", help="relation file of the source X2 (--relation is the target X1)")
    p.add_argument("--map", help="compression map file")
    p.add_argument("--hom")
    p.add_argument("--element", action="append")
    p.add_argument("--subset")
    p.add_argument("--reverse", action="store_true", help="transport from target back to source")

    p = add("demo", cmd_demo, "replay worked examples")
    p.add_argument("name", choices=["fig2", "infinite-support", "sweep4"])
    p.add_argument("--max-k", type=int, default=12)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.budget is None:
            args.budget = default_budget()
        if args.budget <= 0 or args.workers <= 0:
            raise InputError("--budget and --workers must be positive")
        report = args.func(args)
    except (InputError, BudgetExceeded, ValidationError) as exc:
        code = EXIT_BUDGET if isinstance(exc, BudgetExceeded) else (
            EXIT_FALSE if isinstance(exc, ValidationError) else EXIT_INPUT)
        payload = {"error": {"type": type(exc).__name__, "message": str(exc),
                             "witness": _s(getattr(exc, "witness", None))}}
        if args.json:
            out.write(io.dumps(payload))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return code
    if args.json:
        out.write(io.dumps({"exit_code": report.code, "result": report.payload}))
    else:
        for line in report.lines:
            print(line, file=out)
    return report.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
