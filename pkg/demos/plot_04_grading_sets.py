"""
Grading sets
============

A grading set is a set of pairs on which any choice of group values extends
to exactly one homomorphism. Hasse arrows work for tree-like posets; for
preorders the classes of paired atoms add one arrow per extra member.
"""

import random

from incidence_lab.corpus import random_tree_poset
from incidence_lab.fixtures import FIG2A, FIG2B
from incidence_lab.gradingsets import (
    essentiality_witness,
    grading_set_verdict,
    hasse_extension,
    jones_lift,
    search_grading_set,
)
from incidence_lab.groups import by_name
from incidence_lab.relation import hasse_arrows

poset = random_tree_poset(6, random.Random(1))
arrows = hasse_arrows(poset)
print("tree poset:", poset)
phi = {p: i % 3 for i, p in enumerate(arrows)}
print("extension of", phi, "over Z3:")
print("  ", dict(hasse_extension(poset, phi, by_name("Z3")).values))

# one pair is not enough for X1: two homomorphisms agree on it
h1, h2 = essentiality_witness(FIG2A, ((1, 2),), by_name("Z2"))
print("agree on (1,2) but differ:", {p for p in h1 if h1[p] != h2[p]})

print("search on X1:", search_grading_set(FIG2A))

lift = jones_lift(FIG2B)
print(f"lift on X2: beta={list(lift.beta)} gamma={list(lift.gamma)}")
s3 = by_name("S3")
print("  S3 extension:", dict(lift.extend({p: "r" for p in lift.sigma}, s3).values))
print("  verdict:", grading_set_verdict(FIG2B, lift.sigma).as_json()["groups"])
