"""Non-Archimedean Born-rule probabilities.

For a normal observable A, a nonzero state vector psi and a measurable set S
(a finite union of disjoint discs), the probability that the observed value
lies in S is ||i_A(1_S) psi|| after normalizing psi to norm 1.  The values
are exact powers p^(-m/2) of the residue characteristic, never approximate
reals, and the resulting "probability" is ultrametric: monotone, maxitive on
disjoint unions, and genuinely non-additive.
"""

from dataclasses import dataclass

from .errors import NotNormal, PrecisionExhausted, WrongShape, ZeroState
from .funcalc import LocallyConstantFn, PDisc, apply_locally_constant
from .pmatrix import PMatrix, slack, vec_sup_v2
from .scalar import INF, one, zero
from .unidiag import UnidiagOutcome, unitary_diagonalise


@dataclass
class StateVector:
    coords: tuple

    def __post_init__(self):
        self.coords = tuple(self.coords)
        if not self.coords:
            raise WrongShape("empty state vector")

    @property
    def tower(self):
        return self.coords[0].tower

    def norm_v2(self):
        return vec_sup_v2(self.coords)

    def is_zero(self):
        return all(c.is_exact_zero() for c in self.coords)

    def normalized(self) -> "StateVector":
        """Divide by a coordinate of maximal norm; result has norm 1."""
        if self.is_zero():
            raise ZeroState("cannot normalize the zero vector")
        v2 = self.norm_v2()
        big = next(c for c in self.coords
                   if c.is_unit_form() and c.v2 == v2)
        inv = big.inverse()
        return StateVector(tuple(c * inv for c in self.coords))

    def scale(self, c):
        return StateVector(tuple(x * c for x in self.coords))


class MeasurableSet:
    """Finite union of pairwise-disjoint closed discs."""

    def __init__(self, discs):
        discs = list(discs)
        for i in range(len(discs)):
            for j in range(i + 1, len(discs)):
                if discs[i].intersects(discs[j]):
                    raise WrongShape("measurable sets need disjoint discs")
        self.discs = discs

    @classmethod
    def empty(cls):
        return cls([])

    def contains(self, x) -> bool:
        return any(d.contains(x) for d in self.discs)

    def union(self, other: "MeasurableSet") -> "MeasurableSet":
        # keep maximal discs: big-to-small, drop any disc whose center is
        # already covered (intersecting ultrametric discs nest)
        out = []
        for d in sorted(self.discs + other.discs, key=lambda d: d.radius_v2):
            if not any(e.contains(d.center) for e in out):
                out.append(d)
        return MeasurableSet(out)

    def includes(self, other: "MeasurableSet") -> bool:
        """Every disc of other sits inside a disc of self."""
        for d in other.discs:
            hit = any(d.radius_v2 >= e.radius_v2 and e.contains(d.center)
                      for e in self.discs)
            if not hit:
                return False
        return True

    def is_disjoint_from(self, other: "MeasurableSet") -> bool:
        return not any(d.intersects(e) for d in self.discs
                       for e in other.discs)


@dataclass(frozen=True)
class BornProbability:
    """p^(-e2/2), or 0 when e2 is infinite; an exact value-group element."""
    p: int
    e2: float     # doubled exponent; INF encodes probability 0

    def is_zero(self):
        return self.e2 == INF

    def is_one(self):
        return self.e2 == 0

    def as_float(self):
        return 0.0 if self.is_zero() else self.p ** (-self.e2 / 2)

    def __le__(self, other):
        return self.e2 >= other.e2

    def __eq__(self, other):
        return isinstance(other, BornProbability) and self.e2 == other.e2

    def __repr__(self):
        if self.is_zero():
            return "BornProbability(0)"
        if self.is_one():
            return "BornProbability(1)"
        if self.e2 % 2 == 0:
            return f"BornProbability({self.p}^-{self.e2 // 2})"
        return f"BornProbability({self.p}^-{self.e2}/2)"


def indicator_function(measurable: MeasurableSet, spectrum, tower,
                       floor=None) -> LocallyConstantFn:
    """1_S extended by zero pieces around the eigenvalues outside S."""
    s = slack(max(2, len(spectrum)), tower)
    if floor is None:
        floor = 2 * (tower.N - s)
    for d in measurable.discs:
        if d.radius_v2 > floor:
            raise PrecisionExhausted(
                "disc radius below the certifiable resolution")
    pieces = [(d, one(tower)) for d in measurable.discs]
    for lam in spectrum:
        if measurable.contains(lam):
            continue
        if any(d.contains(lam) for d, _ in pieces):
            continue
        pieces.append((PDisc(lam, floor), zero(tower)))
    return LocallyConstantFn(pieces)


def born_probability(mat: PMatrix, psi: StateVector, measurable: MeasurableSet,
                     outcome: UnidiagOutcome | None = None) -> BornProbability:
    """P(A in S) = || i_A(1_S) psi || for the normalized representative."""
    tower = mat.tower
    out = outcome or unitary_diagonalise(mat)
    if not out.success:
        raise NotNormal(out.certificate)
    if psi.is_zero():
        raise ZeroState("physical states are rays of nonzero vectors")
    psi = psi.normalized()
    s = slack(mat.n, tower)
    floor = min(2 * (tower.N - s), 2 * (out.certified_precision - s))
    fn = indicator_function(measurable, out.D, tower, floor)
    proj = apply_locally_constant(fn, mat, out).matrix
    image = proj.apply(psi.coords)
    floor = 2 * out.certified_precision
    if all(e.v2_lower() >= floor for e in image):
        return BornProbability(tower.p, INF)
    e2 = vec_sup_v2(image)
    if e2 < 0:
        raise PrecisionExhausted("projection image left the unit ball")
    return BornProbability(tower.p, e2)


@dataclass
class AxiomReport:
    non_archimedean_ok: bool     # P(S u S') <= max(P(S), P(S'))
    monotone_ok: bool | None     # P(S) <= P(S') when S is included in S'
    orthogonality_ok: bool | None  # equality on disjoint unions
    values: dict


def check_probability_axioms(mat: PMatrix, psi: StateVector,
                             s1: MeasurableSet, s2: MeasurableSet,
                             outcome: UnidiagOutcome | None = None) -> AxiomReport:
    out = outcome or unitary_diagonalise(mat)
    p1 = born_probability(mat, psi, s1, out)
    p2 = born_probability(mat, psi, s2, out)
    union = s1.union(s2)
    pu = born_probability(mat, psi, union, out)
    biggest = p1 if p2 <= p1 else p2
    non_arch = pu <= biggest
    monotone = p2 <= p1 if s1.includes(s2) else None
    ortho = (pu == biggest) if s1.is_disjoint_from(s2) else None
    return AxiomReport(non_arch, monotone, ortho,
                       {"P(S)": p1, "P(S')": p2, "P(S u S')": pu})
