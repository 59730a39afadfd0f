#!/usr/bin/env python3
"""Windowed models of the infinite operators.

Truncated holomorphic calculus for the shift and Toeplitz operators (series
become bands F_{j-i}, with the Gauss norm appearing as the interior sup),
and the fractal operators whose continuous calculus produces iterated
difference quotients in place of Taylor coefficients.
"""

from padspec import (FieldTower, TateSeries, build_window,
                     fractal_continuous_calculus, from_rational,
                     gauss_isometry_check, render_scalar, series_calculus)

t = FieldTower(p=5, N=12)

win = build_window(t, "shift", -5, 5)
series = TateSeries.from_rationals(t, {-1: 2, 0: 7, 1: (1, 5), 2: 25})
res = series_calculus(series, win)
print("F(T) = 2 T^-1 + 7 + (1/5) T + 25 T^2 on the shift window [-5, 5]:")
mid = win.index_of(0)
print("  middle row:",
      [render_scalar(e) for e in res.matrix.rows[mid]])
print(f"  interior rows {res.interior.lo}..{res.interior.hi} carry the "
      "exact band F_(j-i)")

rep = gauss_isometry_check(series, win)
print(f"  Gauss norm exponent {rep.gauss_norm_v2}, interior sup exponent "
      f"{rep.interior_norm_v2}: isometric = {rep.isometric}\n")

fr = build_window(t, "fractal1", -4, 4)
print("fractal operator window (diagonal n, superdiagonals p^k):")
for row in fr.matrix.rows[3:6]:
    print("   ", [render_scalar(e) for e in row])

res = fractal_continuous_calculus(
    lambda n: from_rational(n * n, 1, t), "fractal1", fr, band=2)
print("\nF(z) = z^2 through the fractal calculus (band shows the first")
print("difference dF at the column index times p^k):")
for i in res.interior.rows(fr):
    row = res.matrix.rows[i]
    print("   ", [render_scalar(e) for e in row[max(0, i):i + 3]])
