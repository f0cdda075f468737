"""
Convolution in an incidence ring
================================
"""

from fractions import Fraction

from incidence_lab.fixtures import CHAIN3, UNBALANCED4
from incidence_lab.ring import (
    IntegersMod,
    Rationals,
    RingElement,
    all_ones,
    convolve_raw,
    identity_e,
    standard_unit,
    unit_associativity_witness,
)

Q = Rationals()

# zeta function of the chain 1 < 2 < 3 and its square
zeta = all_ones(CHAIN3, Q)
print("zeta  =", zeta)
print("zeta^2 =", zeta * zeta)

# e_12 e_23 = e_13, while e_23 e_12 vanishes
e12, e23 = standard_unit(CHAIN3, Q, 1, 2), standard_unit(CHAIN3, Q, 2, 3)
print("e12 e23 =", e12 * e23, "   e23 e12 =", e23 * e12)

# the identity is the sum of diagonal units
f = RingElement(CHAIN3, Q, {(1, 2): Fraction(1, 2), (1, 3): -3})
assert identity_e(CHAIN3, Q) * f == f

# coefficients mod 5
g = RingElement(CHAIN3, IntegersMod(5), {(1, 2): 3, (2, 3): 4, (1, 1): 2})
print("g^2 mod 5 =", g * g)

# on an unbalanced relation the product is refused; raw convolution shows why
print("associativity failure:", unit_associativity_witness(UNBALANCED4))
a, b, c = (standard_unit(UNBALANCED4, Q, *p) for p in unit_associativity_witness(UNBALANCED4))
print("  (ab)c =", convolve_raw(convolve_raw(a, b), c), "  a(bc) =", convolve_raw(a, convolve_raw(b, c)))
