#!/usr/bin/env python3
"""Continuous functional calculus for locally constant functions.

A function is a finite list of disjoint discs with values.  Applying it to a
matrix walks the repetitive-reduction projections; the diagonalisation route
serves as an independent cross-check, and the calculus is an isometry:
||c(A)|| = max |c(eigenvalue)|.
"""

from padspec import (FieldTower, LocallyConstantFn, PDisc, PMatrix,
                     apply_locally_constant, apply_via_diagonalisation,
                     calculus_isometry_check, from_rational, norm_le, one,
                     render_scalar, zero)

t = FieldTower(p=5, N=16)
sigma_x = PMatrix.from_rationals(t, [[0, 1], [1, 0]])

indicator = LocallyConstantFn([
    (PDisc(one(t), 4), one(t)),        # value 1 on a disc around +1
    (PDisc(-one(t), 4), zero(t)),      # value 0 on a disc around -1
])
res = apply_locally_constant(indicator, sigma_x)
proj = res.matrix
print("indicator of the +1 eigenvalue applied to sigma_x:")
for row in proj.rows:
    print("   ", [render_scalar(e) for e in row])
print("  idempotent:", norm_le(proj @ proj - proj, res.certified_v2))
print("  sigma_x P = P:", norm_le(sigma_x @ proj - proj, res.certified_v2))

oracle = apply_via_diagonalisation(indicator, sigma_x)
print("  agrees with U c(D) U^-1:", norm_le(proj - oracle, res.certified_v2))

coordinate = LocallyConstantFn([
    (PDisc(one(t), 4), one(t)),
    (PDisc(-one(t), 4), -one(t)),
])
back = apply_locally_constant(coordinate, sigma_x)
print("\nc(lambda) = lambda reproduces the matrix:",
      norm_le(back.matrix - sigma_x, back.certified_v2))

f = LocallyConstantFn([
    (PDisc(one(t), 4), from_rational(3, 1, t)),
    (PDisc(-one(t), 4), from_rational(50, 1, t)),
])
report = calculus_isometry_check(f, sigma_x, other=coordinate)
print("\nisometry ||c(A)|| = max |c(lambda)|:", report.isometry_ok)
print("additive / multiplicative on a common refinement:",
      report.additive_ok, "/", report.multiplicative_ok)
