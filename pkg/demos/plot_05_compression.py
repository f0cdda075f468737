"""
Compressions and split clasps
=============================
"""

from incidence_lab.compression import (
    graded_embedding,
    split_clasps,
    transport_grading_set,
    verify_compression,
)
from incidence_lab.fixtures import FIG2_THETA, FIG2A, FIG2B, SIGMA2
from incidence_lab.relation import FiniteRelation
from incidence_lab.ring import IntegersMod, RingElement
from incidence_lab.walkthrough import fig2_pipeline

# theta: X2 -> X1 glues the paired atoms 2 and 3
cm = verify_compression(FIG2_THETA, FIG2B, FIG2A)
print("theta* on off-diagonal pairs:", dict(cm.theta_star))

# the embedding of incidence rings runs the other way
f = RingElement(FIG2A, IntegersMod(2), {(1, 2): 1, (2, 3): 1, (1, 1): 1})
print("h(f) =", graded_embedding(f, cm))

sigma1, verdict = transport_grading_set(SIGMA2, cm)
print("sigma2 ->", sigma1, "grading set:", verdict.ok)

# the whole worked example in one call
for line in fig2_pipeline().steps:
    print(line)

# split_clasps finds a preorder compressing onto a stable relation
rel = FiniteRelation.build([1, 2, 3, 4, 5], [(1, 4), (1, 5), (2, 1), (2, 4), (3, 1)],
                           reflexive_closure=True)
res = split_clasps(rel)
print(f"{rel!r} splits via {res.method} into {len(res.preorder)} atoms")
print("theta:", res.compression.theta)
