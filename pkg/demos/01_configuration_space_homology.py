#!/usr/bin/env python3
"""Homology of braid groups with twisted rank-one coefficients.

The cellular complex on ordered partitions computes H_j(B_n; V^n) for any
braided vector space V.  With trivial coefficients the answer is the rational
homology of the unordered configuration space of n points in the plane: a
circle for every n >= 2.  Twisting the braiding changes everything; a
non-root-of-unity scalar kills all homology in higher weights.
"""

from braidhom.braided import rank_one_space
from braidhom.exactla import GF, QQ
from braidhom.fnf import braid_homology, fnf_complex

print("=== trivial coefficients: configuration spaces of the plane ===")
triv = rank_one_space(1)
for n in range(1, 9):
    print(f"  n={n}:  H_* = {braid_homology(triv, n, QQ)}")

print()
print("Over F_2 the answer is bigger (divided-power classes survive):")
for n in range(1, 9):
    print(f"  n={n}:  H_* = {braid_homology(triv, n, GF(2))}")

# The sign twist: braiding acts by -1.  Rationally this is the sign local
# system; only n = 0, 1 contribute.
print()
print("=== sign-twisted coefficients over Q ===")
eps = rank_one_space(-1)
for n in range(1, 7):
    print(f"  n={n}:  H_* = {braid_homology(eps, n, QQ)}")

# A generic scalar braiding (here -2, so the twisted parameter is 2, not a
# root of unity): everything dies from n = 2 on.
print()
print("=== braiding scalar -2 over Q ===")
line = rank_one_space(-2)
for n in range(1, 6):
    print(f"  n={n}:  H_* = {braid_homology(line, n, QQ)}")

# The complex itself is tiny: cells are ordered partitions of n.
print()
cx = fnf_complex(triv, 5, QQ)
print("cells of the n=5 complex by total degree:",
      {q: cx.dim(q) for q in cx.degrees})
