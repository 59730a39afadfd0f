#!/usr/bin/env python3
"""Unitary matrices without an inner product.

A matrix over the integer ring is unitary exactly when its reduction mod p
is invertible over the residue field.  The shear [[1,1],[0,1]] shows why the
transpose-Gram test from real matrices is the wrong notion here.
"""

from padspec import (FieldTower, PMatrix, determinant, inverse, is_unitary,
                     matrix_reduction, render_scalar, sup_norm_v2)

t = FieldTower(p=5, N=12)

shear = PMatrix.from_rationals(t, [[1, 1], [0, 1]])
ok, evidence = is_unitary(shear)
print("U = [[1,1],[0,1]] over Q_5")
print(f"  unitary: {ok}   ({evidence['detail']})")
print(f"  |det U| exponent: {determinant(shear).v2}   ||U|| exponent: "
      f"{sup_norm_v2(shear)}")

gram = shear.transpose() @ shear
print("  t(U) U =", [[render_scalar(e) for e in r] for r in gram.rows])
print("  ... not a scalar matrix, yet U preserves every max-norm\n")

ui = inverse(shear)
print("U^-1 =", [[render_scalar(e) for e in r] for r in ui.rows])

bad = PMatrix.from_rationals(t, [[(5, 1), 0], [0, 1]])
ok, evidence = is_unitary(bad)
print(f"\ndiag(5, 1): unitary: {ok}   ({evidence['detail']})")
red = matrix_reduction(bad)
print("  reduction mod 5:", [[e.coeffs[0] for e in r] for r in red.rows])
