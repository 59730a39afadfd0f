"""Reductive spectra, idempotent lifting, and partitions of unity.

A nonzero matrix A with ||A|| = 1 whose reduction diagonalises over the
residue field carries one norm-1 projection per residue eigenvalue; the
projections commute with A, kill each other, and sum to the identity.  They
are obtained by lifting the Lagrange idempotents of the reduction and then
sharpening with the cubic recurrence x -> 3x^2 - 2x^3, which converges
quadratically.
"""

import math
from dataclasses import dataclass

from .errors import (NormNotOne, NotApproxIdempotent,
                     ReductionNotDiagonalisable, ZeroMatrix)
from .pmatrix import PMatrix, matrix_reduction, norm_le, slack, sup_norm_v2
from .residue import (ResidueDiagOutcome, diagonalise_residue,
                      lagrange_idempotents, minimal_polynomial,
                      roots_in_field)
from .scalar import INF, from_rational, lift_residue, pi_power


@dataclass
class ReductiveSpectrum:
    """Residue eigenvalues of the norm-normalized matrix."""
    normalizer_v2: int
    eigenvalues: list
    outcome: ResidueDiagOutcome


@dataclass
class PartitionOfUnity:
    """Pairs (residue eigenvalue, norm-1 projection) for the source matrix."""
    source: PMatrix
    classes: list                # [(ResidueScalar, PMatrix)] sorted by eigenvalue
    certified_v2: int            # identities hold modulo w^certified_v2

    def projections(self):
        return [p for _, p in self.classes]

    def eigenvalue_list(self):
        return [ev for ev, _ in self.classes]


def reductive_spectrum(mat: PMatrix) -> ReductiveSpectrum:
    """Normalize by the uniformiser, reduce, and read off the spectrum."""
    v = sup_norm_v2(mat)
    if v == INF:
        raise ZeroMatrix("the zero matrix has no reductive spectrum")
    b = mat.scale(pi_power(mat.tower, -v)) if v else mat
    red = matrix_reduction(b)
    out = diagonalise_residue(red)
    eigs = sorted((ev for ev, _ in roots_in_field(minimal_polynomial(red))),
                  key=lambda e: e.sort_key())
    return ReductiveSpectrum(v, eigs, out)


def lift_idempotent(p0: PMatrix) -> PMatrix:
    """Sharpen an approximate idempotent to working precision.

    Requires entries in the unit ball and ||p0^2 - p0|| < 1; stops when the
    defect reaches p^-N, capped at ceil(log2 N) + 4 sweeps.
    """
    tower = p0.tower
    target = 2 * tower.N
    if sup_norm_v2(p0) < 0:
        raise NotApproxIdempotent("entries leave the unit ball")
    defect = p0 @ p0 - p0
    if not norm_le(defect, 1):
        raise NotApproxIdempotent("p0^2 - p0 does not have norm < 1")
    x = p0
    two = from_rational(2, 1, tower)
    three = PMatrix.identity(tower, p0.n).scale(from_rational(3, 1, tower))
    best = None
    for _ in range(math.ceil(math.log2(tower.N)) + 4):
        sq = x @ x
        floor = min(e.v2_lower() for r in (sq - x).rows for e in r)
        if floor >= target:
            return x
        if best is not None and floor <= best:
            # quadratic gain stalled: the input's own absolute precision is
            # the ceiling; the lift is as sharp as representable
            return x
        best = floor
        # 3x^2 - 2x^3 = x^2 (3 - 2x)
        x = sq @ (three - x.scale(two))
    if norm_le(x @ x - x, best or 1):
        return x
    raise NotApproxIdempotent("cubic recurrence failed to converge")


def partition_of_unity(mat: PMatrix) -> PartitionOfUnity:
    """The canonical projections of a norm-1 matrix with diagonalisable
    reduction, one per residue eigenvalue, sorted lexicographically."""
    tower = mat.tower
    if sup_norm_v2(mat) != 0:
        raise NormNotOne("partition of unity needs ||A|| = 1")
    red = matrix_reduction(mat)
    out = diagonalise_residue(red)
    if not out.ok:
        raise ReductionNotDiagonalisable(out)
    eigs = [ev for ev, _ in out.eigenvalues]
    if len(eigs) == 1:
        return PartitionOfUnity(mat, [(eigs[0], PMatrix.identity(tower, mat.n))],
                                2 * tower.N)
    polys = lagrange_idempotents(eigs)
    s = slack(mat.n, tower)
    input_floor = min(e.abs2() for r in mat.rows for e in r)
    certified = min(2 * (tower.N - s), int(input_floor) - 2 * s)
    classes = []
    for ev, poly in zip(eigs, polys):
        approx = _evaluate_lifted_poly(poly, mat)
        classes.append((ev, lift_idempotent(approx)))
    return PartitionOfUnity(mat, classes, certified)


def _evaluate_lifted_poly(poly, mat: PMatrix) -> PMatrix:
    """Evaluate a residue polynomial at a matrix, digit-lifting coefficients."""
    tower = mat.tower
    acc = PMatrix.zero(tower, mat.n)
    for c in reversed(poly.coeffs):
        acc = acc @ mat
        if not c.is_zero():
            acc = acc.shift(-lift_residue(c, tower))
    return acc


@dataclass
class SigmaClass:
    eigenvalue: object           # ResidueScalar of the normalized matrix
    projection: PMatrix
    normalizer_v2: int
    rank: int


def sigma_classes(mat: PMatrix) -> list:
    """Spectral classes of a matrix under |λ - λ'| < ||M||.

    Classes are in bijection with the reductive spectrum of the normalized
    matrix and carry their partition-of-unity projections.  The caller is
    responsible for shifting by the (1,1) entry when following the
    diagonalisation recursion.
    """
    v = sup_norm_v2(mat)
    if v == INF:
        raise ZeroMatrix("no classes for the zero matrix")
    b = mat.scale(pi_power(mat.tower, -v)) if v else mat
    pou = partition_of_unity(b)
    out = []
    for ev, proj in pou.classes:
        rank = matrix_reduction(proj).rank()
        out.append(SigmaClass(ev, proj, v, rank))
    return out
