"""Replays of the worked examples, returning structured reports for the CLI and demos."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .compression import transport_grading_set, verify_compression
from .fixtures import FIG2_CAVEAT, FIG2_THETA, FIG2A, FIG2B, FIG2C
from .gradingsets import DEFAULT_TEST_GROUPS, jones_lift
from .relation import clasps, hasse_arrows, is_balanced, reflexive_relations
from .ring import unit_associativity_oracle


@dataclass
class Fig2Report:
    clasps: tuple
    theta: dict
    quotient_sigma: tuple
    sigma2: tuple
    sigma1: tuple
    verdicts: dict
    caveat: str = FIG2_CAVEAT
    steps: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(all(v.values()) for v in self.verdicts.values())


def fig2_pipeline(groups=DEFAULT_TEST_GROUPS, budget=None) -> Fig2Report:
    """clasps of X1, theta: X2 -> X1, grading set of X3, lift to sigma2, transport to sigma1."""
    found = clasps(FIG2A)
    cm = verify_compression(FIG2_THETA, FIG2B, FIG2A)
    lift = jones_lift(FIG2B, test_groups=groups, budget=budget)
    sigma1, verdict = transport_grading_set(lift.sigma, cm, "forward", groups, budget=budget)
    steps = [
        f"X1 = {FIG2A!r}",
        "clasps(X1) = {" + ", ".join(f"({x}, {kind})" for x, kind in found) + "}",
        f"X2 = {FIG2B!r}",
        "theta = " + ", ".join(f"{x}->{cm.theta[x]}" for x in FIG2B.elements) + "  (compression verified)",
        f"X3 = paired quotient of X2 = {FIG2C!r}",
        f"sigma3 = {list(lift.quotient_sigma)}  (Hasse arrows of X3: {list(hasse_arrows(FIG2C))})",
        f"jones lift: beta = {list(lift.beta)}, gamma = {list(lift.gamma)}",
        f"sigma2 = {list(lift.sigma)}",
        f"sigma1 = theta*(sigma2) = {list(sigma1)}",
    ]
    for name, v in verdict.groups.items():
        steps.append(f"  is_grading_set(X1, sigma1) over {name}: "
                     f"extendible={v['extendible']} essential={v['essential']}")
    return Fig2Report(found, dict(cm.theta), lift.quotient_sigma, lift.sigma, sigma1,
                      verdict.groups, steps=steps)


def _sweep_chunk(args):
    n, start, stop = args
    bad = []
    for i, rel in enumerate(reflexive_relations(n)):
        if i < start:
            continue
        if i >= stop:
            break
        if is_balanced(rel) != unit_associativity_oracle(rel):
            bad.append(rel)
    return stop - start, bad


def balance_oracle_sweep(n: int = 4, workers: int = 1):
    """Compare is_balanced with the ring-level associativity oracle on every reflexive relation.

    Returns (agreeing count, total, disagreeing relations).
    """
    total = 1 << (n * (n - 1))
    workers = max(1, workers)
    step = -(-total // workers)
    chunks = [(n, s, min(s + step, total)) for s in range(0, total, step)]
    if workers == 1:
        results = [_sweep_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_sweep_chunk, chunks))
    bad = [r for _, rs in results for r in rs]
    return total - len(bad), total, bad
