#!/usr/bin/env python3
"""Tour of the arithmetic kernel: exact p-adic scalars in field towers.

Every value carries its doubled valuation (so the ramified tower's
half-integer exponents stay exact integers) and the number of known base-p
digits.  Total cancellation never silently produces zero.
"""

from padspec import (FieldTower, from_rational, geometric_inverse,
                     hensel_sqrt, one, pi_power, render_scalar)

t = FieldTower(p=5, N=12)
print(f"working in {t}\n")

x = from_rational(50, 1, t)
print(f"50 in Q_5:           {render_scalar(x)}   norm 5^(-{x.v2 // 2})")

third = from_rational(1, 3, t)
print(f"1/3 in Z_5:          {render_scalar(third)}")
print(f"3 * (1/3):           {render_scalar(third * 3)}\n")

i = hensel_sqrt(from_rational(-1, 1, t))
print(f"sqrt(-1) by Newton:  {render_scalar(i)}")
print(f"  the printed digits end ...431212; squaring gives "
      f"{render_scalar(i * i)}")

g = geometric_inverse(from_rational(5, 1, t))
print(f"\n(1 - 5)^-1 as a geometric series: {render_scalar(g)}")
print(f"  (digit string of 1 + 5 + 25 + ... truncated at precision {t.N})")

ghost = from_rational(7, 3, t)
print(f"\ntotal cancellation: (7/3) - (7/3) = {ghost - ghost!r}")
print("  an imprecise zero remembering the floor, not a fake exact zero")

r = FieldTower(p=5, N=8, ramified=True)
w = pi_power(r, 1)
print(f"\nramified step: w = sqrt(5) has norm 5^(-1/2); "
      f"w*w - 5 = {w * w - from_rational(5, 1, r)!r}")
y = from_rational(3, 1, r) + w
print(f"(3 + w)^-1 * (3 + w) = {render_scalar(y.inverse() * y)}")
