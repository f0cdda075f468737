"""
Balanced and stable relations
=============================

Four atoms already show every behaviour: relations where convolution is
associative, ones where it is not, and clasps that block transitivity.
"""

from incidence_lab.corpus import screen_reflexive
from incidence_lab.fixtures import FIG2A, FIG2B, SQUARE4, UNBALANCED4
from incidence_lab.relation import (
    balance_witness,
    clasps,
    hasse_arrows,
    is_balanced,
    is_stable,
    paired_quotient,
)

# a square with one long diagonal: balanced, but not transitive
print("square:", SQUARE4)
print("  balanced:", is_balanced(SQUARE4), " stable:", is_stable(SQUARE4))

# the failing chain w -> x -> y -> z is reported as a witness
print("unbalanced witness:", balance_witness(UNBALANCED4))

# atom 2 of X1 has an arrow in and an arrow out whose ends are unrelated
print("clasps of X1:", clasps(FIG2A))

# counts over all 4096 reflexive relations on four atoms, screened with numpy
_, masks, balanced, stable, locked = screen_reflexive(4)
print(f"{len(masks)} relations, {balanced.sum()} balanced, {stable.sum()} stable, "
      f"{(stable & ~locked).sum()} stable without locked clasps")

# identifying paired atoms of a preorder leaves a partial order
quot = paired_quotient(FIG2B)
print("X2 / pairing:", quot.relation, " classes:", dict(quot.classes))
print("Hasse arrows of the quotient:", hasse_arrows(quot.relation))
