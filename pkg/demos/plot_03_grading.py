"""
Gradings induced by homomorphisms
=================================

A map Phi from the relation to a group, multiplicative along transitive
triples, puts e_xy in degree Phi(x, y). Reading the degrees back recovers Phi.
"""

from incidence_lab.fixtures import CHAIN3
from incidence_lab.grading import (
    decompose,
    extract_homomorphism,
    induce_grading,
    verify_component_closure,
    verify_homomorphism,
)
from incidence_lab.groups import cyclic
from incidence_lab.ring import Integers, RingElement

Z2 = cyclic(2)
phi = verify_homomorphism(
    {(1, 1): 0, (2, 2): 0, (3, 3): 0, (1, 2): 1, (2, 3): 1, (1, 3): 0}, CHAIN3, Z2
)
grading = induce_grading(phi)
for degree, pairs in grading.components().items():
    print(f"degree {degree}: {list(pairs)}")

f = RingElement(CHAIN3, Integers(), {(1, 1): 2, (1, 2): 1, (1, 3): -1, (2, 3): 5})
for degree, part in decompose(f, grading):
    print(f"  component {degree}: {part}")

print("components multiply correctly:", verify_component_closure(grading))
print("round trip:", extract_homomorphism(grading) == phi)
