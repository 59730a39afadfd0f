"""Linear algebra and polynomial arithmetic over the residue field F_{p^f}.

Elements are coefficient vectors in the polynomial basis 1, s, ..., s^(f-1)
attached to the tower's modulus.  Everything here is exact; this is the layer
on which the whole reduction technique bottoms out.
"""

from dataclasses import dataclass

from .errors import (DuplicateEigenvalue, FieldTooLarge, WrongShape,
                     ZeroPolynomial)
from .tower import FieldTower

_Q_CAP = 1 << 20


class ResidueScalar:
    """An element of F_{p^f}."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        p = tower.p
        c = tuple(int(x) % p for x in coeffs)
        if len(c) != tower.f:
            raise WrongShape("coefficient vector has wrong length")
        self.tower = tower
        self.coeffs = c

    @classmethod
    def zero(cls, tower):
        return cls(tower, (0,) * tower.f)

    @classmethod
    def one(cls, tower):
        return cls(tower, (1,) + (0,) * (tower.f - 1))

    @classmethod
    def from_int(cls, tower, n):
        return cls(tower, (n % tower.p,) + (0,) * (tower.f - 1))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sort_key(self):
        return self.coeffs

    def __add__(self, other):
        return ResidueScalar(self.tower,
                             [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return ResidueScalar(self.tower,
                             [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ResidueScalar(self.tower, [-a for a in self.coeffs])

    def __mul__(self, other):
        t = self.tower
        return ResidueScalar(t, _fq_mul(self.coeffs, other.coeffs, t))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in the residue field")
        t = self.tower
        # Fermat: a^(q-2); q is desk-scale so ~20 multiplications
        return ResidueScalar(t, _fq_pow(self.coeffs, t.q - 2, t))

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return (isinstance(other, ResidueScalar)
                and self.coeffs == other.coeffs
                and self.tower.same_field(other.tower))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.tower.f == 1:
            return f"{self.coeffs[0]}~"
        return f"{list(self.coeffs)}~"


def _fq_mul(a, b, tower):
    p, f, mod = tower.p, tower.f, tower.modulus
    if f == 1:
        return ((a[0] * b[0]) % p,)
    out = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for d in range(2 * f - 2, f - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for i in range(f):
                out[d - f + i] = (out[d - f + i] - c * mod[i]) % p
    return tuple(out[:f])


def _fq_pow(a, e, tower):
    result = (1,) + (0,) * (tower.f - 1)
    base = a
    while e:
        if e & 1:
            result = _fq_mul(result, base, tower)
        base = _fq_mul(base, base, tower)
        e >>= 1
    return result


def all_elements(tower):
    """Iterate F_{p^f}; guarded by the desk-scale cap."""
    if tower.q > _Q_CAP:
        raise FieldTooLarge(f"q = {tower.q} exceeds the scan cap")
    p, f = tower.p, tower.f
    for code in range(tower.q):
        c, coeffs = code, []
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        yield ResidueScalar(tower, coeffs)


class ResiduePoly:
    """Polynomial over F_{p^f}, lowest coefficient first."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.tower = tower
        self.coeffs = tuple(cs)

    @classmethod
    def from_ints(cls, tower, ints):
        return cls(tower, [ResidueScalar.from_int(tower, n) for n in ints])

    @classmethod
    def from_roots(cls, tower, roots):
        poly = cls(tower, [ResidueScalar.one(tower)])
        for r in roots:
            poly = poly * cls(tower, [-r, ResidueScalar.one(tower)])
        return poly

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = ResidueScalar.zero(self.tower)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return ResiduePoly(self.tower, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = ResidueScalar.zero(self.tower)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return ResiduePoly(self.tower, [x - y for x, y in zip(a, b)])

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return ResiduePoly(self.tower, [])
        z = ResidueScalar.zero(self.tower)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ResiduePoly(self.tower, out)

    def scale(self, c):
        return ResiduePoly(self.tower, [a * c for a in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.coeffs[-1].inverse())

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        z = ResidueScalar.zero(self.tower)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ResiduePoly(self.tower, []), self
        quo = [z] * (dq + 1)
        inv_lead = other.coeffs[-1].inverse()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if not c.is_zero():
                for i, oc in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * oc
        return ResiduePoly(self.tower, quo), ResiduePoly(self.tower, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        t = self.tower
        return ResiduePoly(t, [ResidueScalar.from_int(t, i) * c
                               for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x: ResidueScalar) -> ResidueScalar:
        acc = ResidueScalar.zero(self.tower)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, m: "ResidueMatrix") -> "ResidueMatrix":
        acc = ResidueMatrix.zero(self.tower, m.n)
        for c in reversed(self.coeffs):
            acc = acc.matmul(m).add(ResidueMatrix.scalar(self.tower, m.n, c))
        return acc

    def deflate(self, root: ResidueScalar) -> "ResiduePoly":
        quo, rem = self.divmod(ResiduePoly(
            self.tower, [-root, ResidueScalar.one(self.tower)]))
        if not rem.is_zero():
            raise ZeroPolynomial("not a root; cannot deflate")
        return quo

    def __eq__(self, other):
        return isinstance(other, ResiduePoly) and self.coeffs == other.coeffs

    def __repr__(self):
        if self.is_zero():
            return "ResiduePoly(0)"
        return "ResiduePoly(" + " + ".join(
            f"{c!r}*T^{i}" for i, c in enumerate(self.coeffs)
            if not c.is_zero()) + ")"


class ResidueMatrix:
    """Square or rectangular matrix over F_{p^f}."""

    __slots__ = ("tower", "n", "m", "rows")

    def __init__(self, tower, rows):
        rows = tuple(tuple(r) for r in rows)
        self.tower = tower
        self.n = len(rows)
        self.m = len(rows[0]) if rows else 0
        if any(len(r) != self.m for r in rows):
            raise WrongShape("ragged rows")
        self.rows = rows

    @classmethod
    def from_ints(cls, tower, rows):
        return cls(tower, [[ResidueScalar.from_int(tower, x) for x in r]
                           for r in rows])

    @classmethod
    def zero(cls, tower, n, m=None):
        z = ResidueScalar.zero(tower)
        return cls(tower, [[z] * (m or n) for _ in range(n)])

    @classmethod
    def identity(cls, tower, n):
        z, o = ResidueScalar.zero(tower), ResidueScalar.one(tower)
        return cls(tower, [[o if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def scalar(cls, tower, n, c):
        z = ResidueScalar.zero(tower)
        return cls(tower, [[c if i == j else z for j in range(n)]
                           for i in range(n)])

    def is_square(self):
        return self.n == self.m

    def is_zero(self):
        return all(e.is_zero() for r in self.rows for e in r)

    def add(self, other):
        return ResidueMatrix(self.tower,
                             [[a + b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.rows, other.rows)])

    def sub(self, other):
        return ResidueMatrix(self.tower,
                             [[a - b for a, b in zip(r1, r2)]
                              for r1, r2 in zip(self.rows, other.rows)])

    def matmul(self, other):
        if self.m != other.n:
            raise WrongShape("inner dimensions differ")
        z = ResidueScalar.zero(self.tower)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ResidueMatrix(self.tower, out)

    def scale(self, c):
        return ResidueMatrix(self.tower, [[e * c for e in r]
                                          for r in self.rows])

    def transpose(self):
        return ResidueMatrix(self.tower, list(zip(*self.rows)))

    def column(self, j):
        return [r[j] for r in self.rows]

    def apply(self, vec):
        z = ResidueScalar.zero(self.tower)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                acc = acc + a * b
            out.append(acc)
        return out

    def _echelon(self):
        """Row echelon on a copy; returns (rows, pivot column indices)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.m):
            sel = None
            for i in range(pr, self.n):
                if not rows[i][pc].is_zero():
                    sel = i
                    break
            if sel is None:
                continue
            rows[pr], rows[sel] = rows[sel], rows[pr]
            inv = rows[pr][pc].inverse()
            rows[pr] = [e * inv for e in rows[pr]]
            for i in range(self.n):
                if i != pr and not rows[i][pc].is_zero():
                    c = rows[i][pc]
                    rows[i] = [a - c * b for a, b in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.n:
                break
        return rows, pivots

    def rank(self):
        return len(self._echelon()[1])

    def is_invertible(self):
        return self.is_square() and self.rank() == self.n

    def inverse(self):
        if not self.is_square():
            raise WrongShape("inverse of a non-square matrix")
        z, o = ResidueScalar.zero(self.tower), ResidueScalar.one(self.tower)
        aug = ResidueMatrix(self.tower,
                            [list(r) + [o if i == j else z
                                        for j in range(self.n)]
                             for i, r in enumerate(self.rows)])
        rows, pivots = aug._echelon()
        if pivots != list(range(self.n)):
            raise ZeroDivisionError("singular residue matrix")
        return ResidueMatrix(self.tower, [r[self.n:] for r in rows])

    def kernel_basis(self):
        """Basis of the null space, as a list of column vectors."""
        rows, pivots = self._echelon()
        free = [j for j in range(self.m) if j not in pivots]
        z, o = ResidueScalar.zero(self.tower), ResidueScalar.one(self.tower)
        basis = []
        for fc in free:
            vec = [z] * self.m
            vec[fc] = o
            for pr, pc in enumerate(pivots):
                vec[pc] = -rows[pr][fc]
            basis.append(vec)
        return basis

    def column_space_basis(self):
        """Columns of self forming a basis of the column space."""
        _, pivots = self._echelon()
        return [self.column(j) for j in pivots]

    def solve_columns(self, rhs: "ResidueMatrix") -> "ResidueMatrix":
        """X with self @ X = rhs, when self has full column rank."""
        piv_rows = _pivot_rows(self)
        sq = ResidueMatrix(self.tower, [self.rows[i] for i in piv_rows])
        rr = ResidueMatrix(self.tower, [rhs.rows[i] for i in piv_rows])
        return sq.inverse().matmul(rr)

    def __eq__(self, other):
        return isinstance(other, ResidueMatrix) and self.rows == other.rows

    def __repr__(self):
        return "ResidueMatrix(" + "; ".join(
            " ".join(repr(e) for e in r) for r in self.rows) + ")"


def _pivot_rows(mat: ResidueMatrix):
    """Row indices on which the columns of mat restrict to an invertible block."""
    _, pivots = mat.transpose()._echelon()
    return pivots


# -- the operations of the layer --------------------------------------------

def roots_in_field(poly: ResiduePoly):
    """All roots in F_{p^f} with multiplicities, by scan and deflation."""
    if poly.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial")
    roots = []
    for x in all_elements(poly.tower):
        if poly.evaluate(x).is_zero():
            mult = 0
            work = poly
            while not work.is_zero() and work.evaluate(x).is_zero():
                work = work.deflate(x)
                mult += 1
            roots.append((x, mult))
    return roots


def is_squarefree(poly: ResiduePoly) -> bool:
    if poly.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    if poly.degree == 0:
        return True
    return poly.gcd(poly.derivative()).degree == 0


def minimal_polynomial(mat: ResidueMatrix) -> ResiduePoly:
    """Monic least-degree annihilator, by per-vector Krylov annihilators."""
    if not mat.is_square():
        raise WrongShape("minimal polynomial of a non-square matrix")
    t = mat.tower
    n = mat.n
    z, o = ResidueScalar.zero(t), ResidueScalar.one(t)
    result = ResiduePoly(t, [o])
    for i in range(n):
        vec = [o if j == i else z for j in range(n)]
        # Krylov sequence as rows; find first dependence
        seq = [list(vec)]
        while True:
            vec = mat.apply(vec)
            rows = ResidueMatrix(t, seq + [vec])
            if rows.rank() < len(seq) + 1:
                break
            seq.append(list(vec))
        # solve seq^T c = vec for the annihilator x^d - sum c_k x^k
        coeff_mat = ResidueMatrix(t, seq).transpose()
        sol = coeff_mat.solve_columns(
            ResidueMatrix(t, [[e] for e in vec]))
        local = ResiduePoly(t, [-sol.rows[k][0] for k in range(len(seq))]
                            + [o])
        quo = result.gcd(local)
        result = (result.divmod(quo)[0] * local).monic()
    return result


@dataclass
class ResidueDiagOutcome:
    """Diagonalisation verdict for a residue matrix.

    On success, basis^-1 @ mat @ basis is diagonal with the stated
    eigenvalues.  On failure, reason is "NotSplit" (minimal polynomial has an
    irreducible factor of degree > 1; a larger unramified tower may help) or
    "NotSemisimple" (repeated factor; final obstruction), and witness is the
    minimal polynomial.
    """
    ok: bool
    eigenvalues: list | None = None
    basis: ResidueMatrix | None = None
    reason: str | None = None
    witness: ResiduePoly | None = None


def diagonalise_residue(mat: ResidueMatrix) -> ResidueDiagOutcome:
    if not mat.is_square():
        raise WrongShape("diagonalising a non-square matrix")
    t = mat.tower
    mp = minimal_polynomial(mat)
    if not is_squarefree(mp):
        return ResidueDiagOutcome(False, reason="NotSemisimple", witness=mp)
    roots = roots_in_field(mp)
    if sum(m for _, m in roots) != mp.degree:
        return ResidueDiagOutcome(False, reason="NotSplit", witness=mp)
    eigenvalues = []
    cols = []
    for ev, _ in sorted(roots, key=lambda rm: rm[0].sort_key()):
        shifted = mat.sub(ResidueMatrix.scalar(t, mat.n, ev))
        kb = shifted.kernel_basis()
        eigenvalues.append((ev, len(kb)))
        cols.extend(kb)
    basis = ResidueMatrix(t, cols).transpose()
    if len(cols) != mat.n or not basis.is_invertible():
        # minimal polynomial squarefree and split forces this; defensive
        return ResidueDiagOutcome(False, reason="NotSemisimple", witness=mp)
    return ResidueDiagOutcome(True, eigenvalues=eigenvalues, basis=basis)


def lagrange_idempotents(values) -> list:
    """Interpolation idempotents e_mu with e_mu(mu') = delta_{mu,mu'}."""
    values = list(values)
    if not values:
        raise DuplicateEigenvalue("need at least one node")
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] == values[j]:
                raise DuplicateEigenvalue("interpolation nodes repeat")
    t = values[0].tower
    one = ResidueScalar.one(t)
    out = []
    for mu in values:
        poly = ResiduePoly(t, [one])
        for nu in values:
            if nu == mu:
                continue
            factor = ResiduePoly(t, [-nu, one]).scale((mu - nu).inverse())
            poly = poly * factor
        out.append(poly)
    return out
