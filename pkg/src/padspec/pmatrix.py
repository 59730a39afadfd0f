"""Matrices over a p-adic tower with the canonical max-entry operator norm.

The operator norm of a matrix on k^n with the max-coordinate norm is achieved
by the absolute value of an entry, so norms here are exact doubled-valuation
exponents.  Entries in the ImpreciseZero state poison norm comparisons
instead of defaulting; certificates stay sound.
"""

import math
import os

from .errors import (ImpreciseEntry, NotStable, PrecisionExhausted, Singular,
                     WrongShape)
from .residue import ResidueMatrix, _pivot_rows
from .scalar import INF, PadicScalar, from_rational, pi_power, reduce_scalar
from .tower import FieldTower


def slack(n: int, tower: FieldTower) -> int:
    """Residual tolerance in digits for n-dimensional work: ceil(log_p n) + 2.

    PADSPEC_SLACK overrides (test-only escape hatch).
    """
    env = os.environ.get("PADSPEC_SLACK")
    if env is not None:
        return int(env)
    return (0 if n <= 1 else math.ceil(math.log(n, tower.p))) + 2


class PMatrix:
    __slots__ = ("tower", "n", "m", "rows")

    def __init__(self, tower, rows):
        rows = tuple(tuple(r) for r in rows)
        self.tower = tower
        self.n = len(rows)
        self.m = len(rows[0]) if rows else 0
        if any(len(r) != self.m for r in rows):
            raise WrongShape("ragged rows")
        self.rows = rows

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rationals(cls, tower, rows):
        out = []
        for r in rows:
            row = []
            for e in r:
                if isinstance(e, tuple):
                    row.append(from_rational(e[0], e[1], tower))
                elif isinstance(e, PadicScalar):
                    row.append(e)
                else:
                    row.append(from_rational(int(e), 1, tower))
            out.append(row)
        return cls(tower, out)

    @classmethod
    def zero(cls, tower, n, m=None):
        z = PadicScalar.exact_zero(tower)
        return cls(tower, [[z] * (m or n) for _ in range(n)])

    @classmethod
    def identity(cls, tower, n):
        z = PadicScalar.exact_zero(tower)
        o = from_rational(1, 1, tower)
        return cls(tower, [[o if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def diagonal(cls, tower, entries):
        z = PadicScalar.exact_zero(tower)
        entries = list(entries)
        n = len(entries)
        return cls(tower, [[entries[i] if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def from_columns(cls, tower, cols):
        return cls(tower, list(zip(*cols)))

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        return PMatrix(self.tower, [[a + b for a, b in zip(r1, r2)]
                                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return PMatrix(self.tower, [[a - b for a, b in zip(r1, r2)]
                                    for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return PMatrix(self.tower, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.m != other.n:
            raise WrongShape("inner dimensions differ")
        z = PadicScalar.exact_zero(self.tower)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a.is_exact_zero() or b.is_exact_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PMatrix(self.tower, out)

    def scale(self, c: PadicScalar):
        return PMatrix(self.tower, [[e * c for e in r] for r in self.rows])

    def shift(self, c: PadicScalar):
        """self - c * identity."""
        out = [list(r) for r in self.rows]
        for i in range(min(self.n, self.m)):
            out[i][i] = out[i][i] - c
        return PMatrix(self.tower, out)

    def transpose(self):
        return PMatrix(self.tower, list(zip(*self.rows)))

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.m)]

    def diagonal_entries(self):
        return [self.rows[i][i] for i in range(min(self.n, self.m))]

    def apply(self, vec):
        z = PadicScalar.exact_zero(self.tower)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                if a.is_exact_zero() or b.is_exact_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def is_square(self):
        return self.n == self.m

    def __eq__(self, other):
        return (isinstance(other, PMatrix) and self.n == other.n
                and self.m == other.m and self.rows == other.rows)

    def __repr__(self):
        return f"PMatrix({self.n}x{self.m}, p={self.tower.p})"


# -- norms -------------------------------------------------------------------

def vec_sup_v2(vec):
    """Doubled norm exponent of a coordinate vector; INF for the zero vector."""
    best = INF
    fog = INF
    for e in vec:
        if e.is_unit_form():
            best = min(best, e.v2)
        elif e.is_imprecise_zero():
            fog = min(fog, e.v2)
    if fog < best:
        raise ImpreciseEntry(
            "an imprecise entry could dominate the norm "
            f"(floor w^{fog} vs certain w^{best})")
    return best


def sup_norm_v2(mat: PMatrix):
    """Doubled exponent e with ||mat|| = p^(-e/2); INF for the zero matrix."""
    return vec_sup_v2([e for r in mat.rows for e in r])


def norm_le(mat: PMatrix, v2_bound) -> bool:
    """Certified ||mat|| <= p^(-v2_bound/2)?"""
    return all(e.v2_lower() >= v2_bound for r in mat.rows for e in r)


def vec_norm_le(vec, v2_bound) -> bool:
    return all(e.v2_lower() >= v2_bound for e in vec)


# -- reduction ----------------------------------------------------------------

def matrix_reduction(mat: PMatrix) -> ResidueMatrix:
    """Entrywise residue image; requires sup norm <= 1."""
    try:
        return ResidueMatrix(mat.tower,
                             [[reduce_scalar(e) for e in r]
                              for r in mat.rows])
    except PrecisionExhausted as exc:
        raise ImpreciseEntry("entry reduction undecidable") from exc


# -- elimination --------------------------------------------------------------

def _pick_pivot(work, col, start, n):
    best, bestv = None, INF
    fog = INF
    for r in range(start, n):
        e = work[r][col]
        if e.is_unit_form() and e.v2 < bestv:
            best, bestv = r, e.v2
        elif e.is_imprecise_zero():
            fog = min(fog, e.v2)
    if best is not None and fog < bestv:
        raise PrecisionExhausted("pivot choice hidden below precision floor")
    return best


def inverse(mat: PMatrix) -> PMatrix:
    """Gaussian elimination with max-norm pivoting."""
    if not mat.is_square():
        raise WrongShape("inverse of a non-square matrix")
    n = mat.n
    work = [list(r) for r in mat.rows]
    aug = [list(r) for r in PMatrix.identity(mat.tower, n).rows]
    for col in range(n):
        piv = _pick_pivot(work, col, col, n)
        if piv is None:
            if all(work[r][col].is_exact_zero() for r in range(col, n)):
                raise Singular("no pivot in column")
            raise PrecisionExhausted("pivot vanishes to working precision")
        work[col], work[piv] = work[piv], work[col]
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = work[col][col].inverse()
        work[col] = [e * inv for e in work[col]]
        aug[col] = [e * inv for e in aug[col]]
        for r in range(n):
            if r == col:
                continue
            c = work[r][col]
            if c.is_exact_zero():
                continue
            work[r] = [a - c * b for a, b in zip(work[r], work[col])]
            aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return PMatrix(mat.tower, aug)


def determinant(mat: PMatrix) -> PadicScalar:
    """Pivot-product determinant; test-side companion of the unitarity clause."""
    if not mat.is_square():
        raise WrongShape("determinant of a non-square matrix")
    n = mat.n
    work = [list(r) for r in mat.rows]
    det = from_rational(1, 1, mat.tower)
    for col in range(n):
        piv = _pick_pivot(work, col, col, n)
        if piv is None:
            if all(work[r][col].is_exact_zero() for r in range(col, n)):
                return PadicScalar.exact_zero(mat.tower)
            raise PrecisionExhausted("pivot vanishes to working precision")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det = det * work[col][col]
        inv = work[col][col].inverse()
        for r in range(col + 1, n):
            c = work[r][col] * inv
            if c.is_exact_zero():
                continue
            work[r] = [a - c * b for a, b in zip(work[r], work[col])]
    return det


# -- unitarity ----------------------------------------------------------------

def is_unitary(mat: PMatrix):
    """Integral with invertible reduction; returns (bool, evidence dict)."""
    if not mat.is_square():
        raise WrongShape("unitarity of a non-square matrix")
    for r in mat.rows:
        for e in r:
            if e.is_unit_form() and e.v2 < 0:
                return False, {"clause": "norm", "detail": "an entry has norm > 1"}
            if e.is_imprecise_zero() and e.v2 < 0:
                raise ImpreciseEntry("integrality undecidable")
    red = matrix_reduction(mat)
    if red.is_invertible():
        return True, {"clause": "reduction", "detail": "reduction invertible"}
    return False, {"clause": "reduction", "detail": "reduction singular"}


# -- orthonormal bases --------------------------------------------------------

def orthonormal_basis_of_span(vectors, tower=None, expected_rank=None) -> PMatrix:
    """Norm-1 columns with independent reductions spanning the input.

    Scale each vector to norm 1, eliminate against accepted unit pivots at
    the residue level, rescale and repeat.  A vector that cancels down to its
    own precision fog is dependent at the available precision and is dropped;
    when the caller knows the rank in advance (e.g. from a residue
    projection), expected_rank turns a miscount into PrecisionExhausted.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise WrongShape("no input vectors")
    tower = tower or next(e.tower for v in vectors for e in v)
    n = len(vectors[0])
    s = slack(n, tower)
    cap2 = 2 * (tower.N - s)
    accepted = []   # (norm-1 column with unit pivot residue, pivot row)
    for v in vectors:
        work = v
        for _ in range((cap2 + 4) * (n + 1)):
            if _spent(work, cap2, s):
                work = None
                break
            # eliminate at the residue level of the normalized copy, but
            # subtract at the natural scale so absolute precision survives
            t, rvec = _scaled_residues(work, tower)
            coeff = None
            for col, pr in accepted:
                c = rvec[pr]
                if not c.is_zero():
                    coeff = _lift(c, tower) * pi_power(tower, t)
                    work = tuple(a - coeff * b for a, b in zip(work, col))
                    break
            if coeff is not None:
                continue
            pivot = next((i for i, c in enumerate(rvec)
                          if not c.is_zero()
                          and i not in [pr for _, pr in accepted]), None)
            if pivot is not None:
                inv = _lift(rvec[pivot], tower).inverse() * pi_power(tower, -t)
                accepted.append((tuple(e * inv for e in work), pivot))
                break
            # residue mass sat on pivot rows only: the norm dropped; retry
        else:
            raise PrecisionExhausted("rank undecidable at working precision")
    if not accepted:
        raise PrecisionExhausted("input spans nothing above the floor")
    if expected_rank is not None and len(accepted) != expected_rank:
        raise PrecisionExhausted(
            f"span rank {len(accepted)} disagrees with the certified rank "
            f"{expected_rank}")
    return PMatrix.from_columns(tower, [col for col, _ in accepted])


def _spent(work, cap2, s):
    """Whether the vector is certifiably below its own remaining knowledge."""
    floor2 = min(cap2, min(e.abs2() for e in work) - 2 * s)
    return all(e.v2_lower() >= floor2 for e in work)


def mat_spent(mat: PMatrix, cap2, s) -> bool:
    """Matrix version of the spent test: zero at the available precision."""
    return _spent([e for r in mat.rows for e in r], cap2, s)


def _scaled_residues(work, tower):
    """Norm exponent t of the vector and the residues of pi^(-t) * work."""
    try:
        t = vec_sup_v2(work)
        scale = pi_power(tower, -t) if t else None
        rvec = [reduce_scalar(e * scale if scale else e) for e in work]
    except (ImpreciseEntry, PrecisionExhausted) as exc:
        raise PrecisionExhausted(
            "rank undecidable at working precision") from exc
    return t, rvec


def _lift(rs, tower):
    from .scalar import lift_residue
    return lift_residue(rs, tower)


def restriction_matrix(mat: PMatrix, cols: PMatrix) -> PMatrix:
    """R with mat @ cols = cols @ R, via the unit-pivot rows of cols."""
    tower = mat.tower
    d = cols.m
    s = slack(mat.n, tower)
    red = matrix_reduction(cols)
    piv = _pivot_rows(red)
    if len(piv) != d:
        raise WrongShape("columns do not have independent reductions")
    mc = mat @ cols
    sq = PMatrix(tower, [cols.rows[i] for i in piv])
    rhs = PMatrix(tower, [mc.rows[i] for i in piv])
    r = inverse(sq) @ rhs
    input_floor = min(e.abs2() for m in (mat, cols) for row in m.rows
                      for e in row)
    tol = min(2 * (tower.N - s), input_floor - 2 * s)
    if not norm_le(mc - cols @ r, tol):
        raise NotStable("column span is not stable under the matrix")
    return r


# -- desk-scale generators (selftest and property suites) ----------------------

def random_integral_matrix(tower, n, rng, depth=None):
    """Random matrix over the integer ring, entries exact rationals."""
    d = tower.p ** min(tower.N, depth or 6)
    return PMatrix.from_rationals(
        tower, [[rng.randrange(d) for _ in range(n)] for _ in range(n)])


def random_unitary(tower, n, rng):
    """Rejection-sampled element of GL_n of the integer ring."""
    while True:
        m = random_integral_matrix(tower, n, rng)
        if matrix_reduction(m).is_invertible():
            return m
