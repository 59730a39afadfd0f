"""Continuous functional calculus for locally constant functions.

A locally constant function is a finite list of pairwise-disjoint closed
discs with attached values.  Applying it to a matrix descends the repetitive
reduction chain of A - λ at each needed spectral center until the projected
remainder fits inside one disc, then sums value * projection over a disjoint
subcover of the spectrum.  A diagonalisation-based route is provided as an
independent cross-check.
"""

from dataclasses import dataclass

from .errors import (ImpreciseEntry, NotNaive, OverlappingPieces,
                     PrecisionExhausted, SpectrumNotCovered)
from .pmatrix import PMatrix, inverse, norm_le, slack, sup_norm_v2
from .scalar import INF, PadicScalar
from .unidiag import UnidiagOutcome, naive_chain, unitary_diagonalise


@dataclass(frozen=True)
class PDisc:
    """Closed disc: x belongs iff v2(x - center) >= radius_v2."""
    center: PadicScalar
    radius_v2: int

    def contains(self, x: PadicScalar) -> bool:
        diff = x - self.center
        if diff.is_exact_zero():
            return True
        if diff.is_unit_form():
            return diff.v2 >= self.radius_v2
        if diff.v2 >= self.radius_v2:
            return True
        raise PrecisionExhausted("disc membership hidden below the floor")

    def intersects(self, other: "PDisc") -> bool:
        diff = self.center - other.center
        bound = min(self.radius_v2, other.radius_v2)
        if diff.is_exact_zero():
            return True
        if diff.is_unit_form():
            return diff.v2 >= bound
        if diff.v2 >= bound:
            return True
        return False


class LocallyConstantFn:
    """Finite disjoint disc/value list; the calculus input."""

    def __init__(self, pieces):
        pieces = list(pieces)
        for i in range(len(pieces)):
            for j in range(i + 1, len(pieces)):
                if pieces[i][0].intersects(pieces[j][0]):
                    raise OverlappingPieces(
                        "pieces must be pairwise disjoint (nested discs count)")
        self.pieces = pieces

    def piece_for(self, x: PadicScalar):
        for disc, value in self.pieces:
            if disc.contains(x):
                return disc, value
        return None

    def value_at(self, x: PadicScalar):
        hit = self.piece_for(x)
        if hit is None:
            raise SpectrumNotCovered(x)
        return hit[1]

    def __len__(self):
        return len(self.pieces)


def refine(f: LocallyConstantFn, g: LocallyConstantFn):
    """Common refinement: for each intersecting pair the smaller disc with
    the value pair.  Points covered by only one input are dropped."""
    out = []
    for df, vf in f.pieces:
        for dg, vg in g.pieces:
            if df.intersects(dg):
                small = df if df.radius_v2 >= dg.radius_v2 else dg
                out.append((small, vf, vg))
    return out


def combine(f, g, op):
    pieces = [(d, op(vf, vg)) for d, vf, vg in refine(f, g)]
    return LocallyConstantFn(pieces)


@dataclass
class CalcResult:
    matrix: PMatrix
    levels: list      # (center, level index, achieved radius exponent)
    certified_v2: int


def _dedupe_spectrum(d_list, tol2):
    reps = []
    for lam in d_list:
        if not any((lam - r).v2_lower() >= tol2 for r in reps):
            reps.append(lam)
    return reps


def _chain_to_radius(mat, lam, radius_v2, tower):
    """Least naive level where the remainder of A - lam fits in the disc."""
    shifted = mat.shift(lam)
    proj = PMatrix.identity(tower, mat.n)
    rem = shifted
    level = 0
    start = min((e.v2_lower() for row in shifted.rows for e in row),
                default=INF)
    start = 0 if start == INF else min(0, int(start))
    cap = (radius_v2 - start) // tower.uniformiser_v2 + 2
    while not norm_le(rem, radius_v2):
        level += 1
        if level > cap:
            raise PrecisionExhausted("radius descent exceeded the decay bound")
        proj, rem = naive_chain(shifted, level)[-1]
    try:
        rad = sup_norm_v2(rem)
    except ImpreciseEntry:
        rad = min(e.v2_lower() for row in rem.rows for e in row)
    return level, proj, rad


def apply_locally_constant(fn: LocallyConstantFn, mat: PMatrix,
                           outcome: UnidiagOutcome | None = None) -> CalcResult:
    """c(A) as a sum of values times repetitive-reduction projections."""
    tower = mat.tower
    out = outcome or unitary_diagonalise(mat)
    if not out.success:
        raise NotNaive(out.certificate)
    tol2 = 2 * out.certified_precision
    reps = _dedupe_spectrum(out.D, tol2)
    for lam in out.D:
        if fn.piece_for(lam) is None:
            raise SpectrumNotCovered(lam)
    candidates = []
    for lam in reps:
        disc, value = fn.piece_for(lam)
        level, proj, rad = _chain_to_radius(mat, lam, disc.radius_v2, tower)
        candidates.append((lam, value, level, proj, rad))
    # disjoint subcover: largest radius first, then canonical order
    candidates.sort(key=lambda c: (c[4], c[0].sort_key()))
    selected = []
    for lam, value, level, proj, rad in candidates:
        covered = any((lam - mu).v2_lower() >= srad
                      for mu, _, _, _, srad in selected)
        if not covered:
            selected.append((lam, value, level, proj, rad))
    acc = PMatrix.zero(tower, mat.n)
    for lam, value, level, proj, rad in selected:
        if value.is_exact_zero():
            continue
        acc = acc + proj.scale(value)
    s = slack(mat.n, tower)
    return CalcResult(acc,
                      [(lam, level, rad) for lam, _, level, _, rad in selected],
                      2 * (tower.N - s))


def apply_via_diagonalisation(fn: LocallyConstantFn, mat: PMatrix,
                              outcome: UnidiagOutcome | None = None) -> PMatrix:
    """U diag(c(λ_1), ..., c(λ_n)) U^-1; the independent oracle route."""
    out = outcome or unitary_diagonalise(mat)
    if not out.success:
        raise NotNaive(out.certificate)
    values = [fn.value_at(lam) for lam in out.D]
    return out.U @ PMatrix.diagonal(mat.tower, values) @ inverse(out.U)


@dataclass
class IsometryReport:
    isometry_ok: bool
    operator_norm_v2: float
    function_sup_v2: float
    additive_ok: bool | None
    multiplicative_ok: bool | None
    tolerance_v2: int


def calculus_isometry_check(fn: LocallyConstantFn, mat: PMatrix,
                            other: LocallyConstantFn | None = None,
                            outcome: UnidiagOutcome | None = None) -> IsometryReport:
    """||c(A)|| = max |c(λ)| plus the homomorphism identities on a common
    refinement when a second function is supplied."""
    out = outcome or unitary_diagonalise(mat)
    if not out.success:
        raise NotNaive(out.certificate)
    res = apply_locally_constant(fn, mat, out)
    lhs = sup_norm_v2(res.matrix)
    rhs = min((fn.value_at(lam).v2_lower() for lam in out.D), default=INF)
    s = slack(mat.n, mat.tower)
    # identities hold modulo the diagonalisation's achieved precision,
    # shifted by any norm the function values carry beyond the unit ball
    def _neg(f):
        return min([0] + [v.v2_lower() for _, v in f.pieces
                          if v.is_unit_form()])
    tol2 = (2 * (out.certified_precision - s) + _neg(fn)
            + (_neg(other) if other is not None else 0))
    iso_ok = (lhs == rhs) or (lhs >= tol2 and rhs >= tol2)
    add_ok = mul_ok = None
    if other is not None:
        fsum = combine(fn, other, lambda a, b: a + b)
        fprod = combine(fn, other, lambda a, b: a * b)
        ca = res.matrix
        cb = apply_locally_constant(other, mat, out).matrix
        add_ok = norm_le(apply_locally_constant(fsum, mat, out).matrix
                         - (ca + cb), tol2)
        mul_ok = norm_le(apply_locally_constant(fprod, mat, out).matrix
                         - ca @ cb, tol2)
    return IsometryReport(iso_ok, lhs, rhs, add_ok, mul_ok, tol2)
