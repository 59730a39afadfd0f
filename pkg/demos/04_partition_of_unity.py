#!/usr/bin/env python3
"""Spectral partitions of unity by idempotent lifting.

For a norm-1 matrix whose reduction diagonalises, each residue eigenvalue
gets a norm-1 projection: lift the Lagrange idempotent of the reduction,
then sharpen with x -> 3x^2 - 2x^3 until idempotent to working precision.
The projections sum to 1, annihilate each other, and commute with A.
"""

from padspec import (FieldTower, PMatrix, norm_le, partition_of_unity,
                     render_scalar, sup_norm_v2)

t = FieldTower(p=5, N=14)
mat = PMatrix.from_rationals(t, [[0, (5, 1)], [(5, 1), 1]])
print("A = [[0, 5], [5, 1]] over Q_5  (reduction diag(0, 1))\n")

pou = partition_of_unity(mat)
for ev, proj in pou.classes:
    print(f"residue eigenvalue {ev.coeffs[0]}:")
    for row in proj.rows:
        print("   ", [render_scalar(e) for e in row])
    print(f"    norm exponent {sup_norm_v2(proj)}, idempotent mod "
          f"w^{pou.certified_v2}: "
          f"{norm_le(proj @ proj - proj, pou.certified_v2)}")

p0, p1 = pou.projections()
print("\nP_0 + P_1 = 1:",
      norm_le(p0 + p1 - PMatrix.identity(t, 2), pou.certified_v2))
print("P_0 P_1 = 0:  ", norm_le(p0 @ p1, pou.certified_v2))
print("commute with A:", norm_le(p0 @ mat - mat @ p0, pou.certified_v2))
