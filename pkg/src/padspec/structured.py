"""Windowed models of the shift, Toeplitz, and fractal operators.

The true operators act on doubly- or singly-infinite index sets; a window
[lo, hi] materializes the finite block.  All claims are made on an interior
mask where truncation cannot reach: edge rows and columns carry no contract.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import SupportNotAllowed, WindowTooNarrow, WrongShape
from .pmatrix import PMatrix
from .scalar import INF, PadicScalar, from_rational
from .tower import FieldTower

RULES = ("shift", "toeplitz", "fractal1", "fractal2", "custom")


@dataclass
class WindowOperator:
    rule: str
    lo: int
    hi: int
    matrix: PMatrix

    @property
    def size(self):
        return self.hi - self.lo + 1

    def index_of(self, n):
        return n - self.lo


def build_window(tower: FieldTower, rule: str, lo: int, hi: int,
                 custom_rows=None) -> WindowOperator:
    if rule not in RULES:
        raise WrongShape(f"unknown window rule {rule!r}")
    if hi < lo:
        raise WindowTooNarrow("empty window")
    if rule == "toeplitz" and lo != 0:
        raise WrongShape("the one-sided window starts at 0")
    n = hi - lo + 1
    z = PadicScalar.exact_zero(tower)
    if rule == "custom":
        mat = PMatrix.from_rationals(tower, custom_rows)
        if mat.n != n or mat.m != n:
            raise WrongShape("custom rows do not match the window")
        return WindowOperator(rule, lo, hi, mat)
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        m = lo + i
        if rule in ("shift", "toeplitz"):
            if i + 1 < n:
                rows[i][i + 1] = from_rational(1, 1, tower)
        elif rule == "fractal1":
            rows[i][i] = from_rational(m, 1, tower)
            for k in range(1, n - i):
                rows[i][i + k] = from_rational(tower.p ** k, 1, tower)
        elif rule == "fractal2":
            rows[i][i] = from_rational(m, 1, tower)
            if i + 1 < n:
                rows[i][i + 1] = from_rational(tower.p, 1, tower)
    return WindowOperator(rule, lo, hi, PMatrix(tower, rows))


class TateSeries:
    """Finite-support coefficient family n -> scalar, two-sided."""

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = {int(n): c for n, c in dict(coeffs).items()
                       if not c.is_exact_zero()}

    @classmethod
    def from_rationals(cls, tower, table):
        return cls(tower, {n: from_rational(*((v, 1) if isinstance(v, int)
                                              else v), tower)
                           for n, v in table.items()})

    def support(self):
        return sorted(self.coeffs)

    def bandwidth(self):
        return max((abs(n) for n in self.coeffs), default=0)

    def gauss_norm_v2(self):
        """Doubled exponent of the Gauss norm max |F_n|; INF when zero."""
        return min((c.v2_exact() for c in self.coeffs.values()), default=INF)

    def __mul__(self, other):
        out = {}
        z = PadicScalar.exact_zero(self.tower)
        for n, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                out[n + m] = out.get(n + m, z) + a * b
        return TateSeries(self.tower, out)

    def __add__(self, other):
        out = dict(self.coeffs)
        z = PadicScalar.exact_zero(self.tower)
        for m, b in other.coeffs.items():
            out[m] = out.get(m, z) + b
        return TateSeries(self.tower, out)


@dataclass
class InteriorMask:
    lo: int
    hi: int

    def rows(self, window: WindowOperator):
        return range(window.index_of(self.lo), window.index_of(self.hi) + 1)


@dataclass
class WindowCalcResult:
    matrix: PMatrix
    interior: InteriorMask
    flagged: set


def series_calculus(series: TateSeries, window: WindowOperator) -> WindowCalcResult:
    """F(M) on the window by powers of the banded block.

    Negative powers use the reverse shift; they exist only on the two-sided
    window.  Entries within bandwidth of the edge carry no contract.
    """
    tower = window.matrix.tower
    d = series.bandwidth()
    if window.size < max(4 * d, 1):
        raise WindowTooNarrow(f"window must be at least 4x the bandwidth {d}")
    if window.rule == "toeplitz" and any(n < 0 for n in series.coeffs):
        raise SupportNotAllowed("the one-sided algebra has no negative powers")
    if window.rule not in ("shift", "toeplitz"):
        raise WrongShape("series calculus applies to shift-type windows")
    n = window.size
    acc = PMatrix.zero(tower, n)
    fwd = window.matrix
    rev = fwd.transpose()   # the reverse shift block
    pos = PMatrix.identity(tower, n)
    for k in range(0, max(series.support(), default=0) + 1):
        c = series.coeffs.get(k)
        if c is not None:
            acc = acc + pos.scale(c)
        pos = pos @ fwd
    pos = rev
    for k in range(-1, min(series.support(), default=0) - 1, -1):
        c = series.coeffs.get(k)
        if c is not None:
            acc = acc + pos.scale(c)
        pos = pos @ rev
    interior = InteriorMask(window.lo + d, window.hi - d)
    return WindowCalcResult(acc, interior, set())


@dataclass
class GaussReport:
    interior_norm_v2: float
    gauss_norm_v2: float
    isometric: bool


def gauss_isometry_check(series: TateSeries,
                         window: WindowOperator) -> GaussReport:
    """Max interior-entry norm of F(M) against the Gauss norm of F."""
    res = series_calculus(series, window)
    best = INF
    for i in res.interior.rows(window):
        for e in res.matrix.rows[i]:
            if e.is_unit_form():
                best = min(best, e.v2)
    gauss = series.gauss_norm_v2()
    return GaussReport(best, gauss, best == gauss)


def forward_difference(values, order):
    """Iterated difference G(n) - G(n-1) applied order times at offset 0."""
    out = list(values)
    for _ in range(order):
        out = [a - b for a, b in zip(out[1:], out[:-1])]
    return out


def fractal_continuous_calculus(fvals, which: str, window: WindowOperator,
                                band: int) -> WindowCalcResult:
    """Banded image of a function under the fractal operator's calculus.

    fvals is a value oracle on integers (callable n -> PadicScalar).  For
    fractal1 the band is diagonal F(n) with ∂F(n+k) p^k at offset k; for
    fractal2 the offset-k entry is (k!)^-1 ∂^k F(n+k) p^k, and entries whose
    factorial denominator has positive valuation (k >= p) are flagged.

    The difference is taken at the column index: substituting F = z^2 into
    the band shows the offset-1 entry of F(A) is (2n+1) p = ∂F(n+1) p, and
    the diagonalisation oracle confirms it entrywise.
    """
    if which not in ("fractal1", "fractal2"):
        raise WrongShape("fractal calculus applies to fractal windows")
    tower = window.matrix.tower
    n = window.size
    if band < 1 or n < 2 * band + 1:
        raise WindowTooNarrow("window cannot hold the declared band")
    z = PadicScalar.exact_zero(tower)
    rows = [[z] * n for _ in range(n)]
    flagged = set()
    for i in range(n):
        m = window.lo + i
        rows[i][i] = fvals(m)
        for k in range(1, min(band, n - 1 - i) + 1):
            col = m + k
            if which == "fractal1":
                diff = fvals(col) - fvals(col - 1)
                entry = diff * from_rational(tower.p ** k, 1, tower)
            else:
                vals = [fvals(col - k + j) for j in range(k + 1)]
                diff = forward_difference(vals, k)[0]
                fact = Fraction(1)
                for j in range(2, k + 1):
                    fact *= j
                entry = diff * from_rational(tower.p ** k, fact.numerator,
                                             tower)
                if fact.numerator % tower.p == 0:
                    flagged.add((i, i + k))
            rows[i][i + k] = entry
    interior = InteriorMask(window.lo + band, window.hi - band)
    return WindowCalcResult(PMatrix(tower, rows), interior, flagged)
