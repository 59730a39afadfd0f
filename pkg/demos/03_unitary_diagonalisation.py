#!/usr/bin/env python3
"""The reduction algorithm: decide unitary diagonalisability, certified.

Shift off the (1,1) entry, normalize, diagonalise the residue matrix, lift
its eigenspace decomposition to projections, restrict and recurse.  Success
returns the conjugator and diagonal at a certified precision; failure
returns a replayable certificate naming the offending residue matrix.
"""

import random

from padspec import (FieldTower, PMatrix, from_rational, hensel_sqrt,
                     inverse, one, render_scalar, unitary_diagonalise)
from padspec.pmatrix import random_unitary

t = FieldTower(p=5, N=16)

print("sigma_x = [[0,1],[1,0]] over Q_5:")
out = unitary_diagonalise(PMatrix.from_rationals(t, [[0, 1], [1, 0]]))
print(f"  success, certified to {out.certified_precision} digits")
print("  D =", [render_scalar(d) for d in out.D])
print("  U =", [[render_scalar(e) for e in r] for r in out.U.rows])

print("\n[[1,i],[i,-1]] over Q_5 (squares to zero):")
i = hensel_sqrt(from_rational(-1, 1, t))
mat = PMatrix(t, [[one(t), i], [i, -one(t)]])
out = unitary_diagonalise(mat)
cert = out.certificate
print(f"  not unitarily diagonalisable: {cert.reason} at depth {cert.depth}")
print("  offending residue matrix:",
      [[e.coeffs[0] for e in r] for r in cert.residue_matrix.rows])
print("  replay reproduces it:", cert.replay(mat) == cert.residue_matrix)

print("\nplanted 4x4 instance M = U0 D U0^-1:")
rng = random.Random(7)
big = FieldTower(p=5, N=26)
u0 = random_unitary(big, 4, rng)
lams = [from_rational(rng.randrange(5 ** 4), 1, big) for _ in range(4)]
m = u0 @ PMatrix.diagonal(big, lams) @ inverse(u0)
out = unitary_diagonalise(m)
print(f"  success: {out.success}, certified {out.certified_precision} digits")


def low_digits(x):
    return x.unit[0] * big.p ** (x.v2 // 2) % big.p ** 6


print("  planted eigenvalues mod 5^6:  ", sorted(low_digits(v) for v in lams))
print("  recovered eigenvalues mod 5^6:", sorted(low_digits(v) for v in out.D))
