"""Named relations used by the demos, tests and CLI.

The two-step example relations are reconstructions from the textual
constraints of the worked example (the source figures are not available as
data). They are checked against every stated property in the test suite.
"""

from .relation import FiniteRelation, chain, paired_quotient

CHAIN3 = chain(3)

# 1 -> 2 -> {3, 4}, with 3 and 4 mutually related.
FIG2A = FiniteRelation.build(
    [1, 2, 3, 4],
    [(1, 2), (2, 3), (2, 4), (3, 4), (4, 3)],
    reflexive_closure=True,
)

# A preorder on five atoms: 1 < 2, 3 < 4 ~ 5.
FIG2B = FiniteRelation.build(
    [1, 2, 3, 4, 5],
    [(1, 2), (3, 4), (3, 5), (4, 5), (5, 4)],
    reflexive_closure=True,
)

FIG2C = paired_quotient(FIG2B).relation

# theta: FIG2B -> FIG2A, collapsing 2 and 3 onto the clasp 2.
FIG2_THETA = {1: 1, 2: 2, 3: 2, 4: 3, 5: 4}

SIGMA1 = ((1, 2), (2, 3), (3, 4))
SIGMA2 = ((1, 2), (3, 4), (4, 5))
SIGMA3 = ((1, 2), (3, 4))

FIG2_CAVEAT = (
    "note: FIG2A/FIG2B are reconstructed from the worked example's stated "
    "properties; the quotient FIG2C consistent with sigma3 = {(1,2),(3,4)} "
    "being its full Hasse arrow set is disconnected, although the example "
    "calls it minimally connected."
)

# Reflexive closure of 1->2->3->4 plus the shortcut 1->4: balanced, two unlocked clasps.
SQUARE4 = FiniteRelation.build([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4)], reflexive_closure=True)

# Same plus 1->3: 1 rho 3 holds while 2 rho 4 fails, so it is not balanced.
UNBALANCED4 = FiniteRelation.build(
    [1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)], reflexive_closure=True
)

# 0 < 1 < 3, 0 < 2 < 3.
DIAMOND = FiniteRelation.build(
    [0, 1, 2, 3],
    [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
    reflexive_closure=True,
)
