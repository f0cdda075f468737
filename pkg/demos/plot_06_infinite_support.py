"""
A homomorphism with infinite image
==================================

On the naturals, Phi(m, m+1) = g^m gives Phi(a, b) = g^(a + ... + b-1).
Truncating to 1 < ... < k shows the image growing with k, so the full map
has infinite image and cannot induce a grading with finite support.
"""

from incidence_lab.errors import InputError
from incidence_lab.grading import induce_grading, truncated_naturals_demo

for k in range(2, 13):
    rep = truncated_naturals_demo(k)
    print(f"k={k:2d}  |Im Phi| = {rep.image_size}")

try:
    induce_grading(rep.limit)
except InputError as exc:
    print("limit refused:", exc)
