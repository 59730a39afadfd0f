"""Exact finite-precision arithmetic in a p-adic field tower.

A nonzero scalar is stored in uniformiser-normal form

    x = w^v2 * (u0 + u1*w),        w = sqrt(p) if the tower is ramified,
    x = p^(v2/2) * u0              otherwise (v2 even),

where u0 is a unit of the unramified integer ring (coefficient vector in the
polynomial basis) and u1 is integral.  v2 is the doubled valuation, so
norm(x) = p^(-v2/2) exactly, including the half-integer exponents of the
ramified step.  Unit vectors are known modulo p^prec for a tracked prec <= N.

Total cancellation in add/sub does not silently produce zero: it produces a
distinguished ImpreciseZero state that remembers the doubled absolute
precision below which the value is invisible.  Exact zeros exist only where
they are structurally forced (zero numerators, zero matrices).
"""

from fractions import Fraction

from .errors import (DenominatorZero, DivisionByZero, EvenPrime,
                     NormExceedsOne, NormNotLessThanOne, NotUnit,
                     PrecisionExhausted, WrongShape)
from .residue import ResidueScalar, _fq_pow
from .tower import FieldTower

_ZERO, _UNIT, _IZERO = 0, 1, 2
INF = float("inf")


def _ival(n: int, p: int, cap: int) -> int:
    """v_p(n) capped at cap; cap also stands in for v_p(0)."""
    if n == 0:
        return cap
    v = 0
    while v < cap and n % p == 0:
        n //= p
        v += 1
    return v


def _vec_val(vec, p, cap):
    return min(_ival(c, p, cap) for c in vec)


def _vec_mul(a, b, tower, pmod):
    f, mod, p = tower.f, tower.modulus, tower.p
    if f == 1:
        return ((a[0] * b[0]) % pmod,)
    out = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    for d in range(2 * f - 2, f - 1, -1):
        c = out[d]
        if c:
            out[d] = 0
            for i in range(f):
                out[d - f + i] -= c * mod[i]
    return tuple(c % pmod for c in out[:f])


def _vec_inv(a, tower, prec):
    """Inverse of a unit vector modulo p^prec by Newton lifting."""
    p, f = tower.p, tower.f
    abar = tuple(c % p for c in a)
    # inverse mod p via Fermat in F_q
    z = _fq_pow(abar, tower.q - 2, tower)
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        pm = p ** k
        az = _vec_mul(a, z, tower, pm)
        two_minus = tuple((2 if i == 0 else 0) - c for i, c in enumerate(az))
        z = _vec_mul(z, two_minus, tower, pm)
    return tuple(c % p ** prec for c in z)


class PadicScalar:
    __slots__ = ("tower", "kind", "v2", "unit", "runit", "prec")

    def __init__(self, tower, kind, v2, unit, runit, prec):
        self.tower = tower
        self.kind = kind
        self.v2 = v2
        self.unit = unit
        self.runit = runit
        self.prec = prec

    # -- constructors --------------------------------------------------

    @classmethod
    def exact_zero(cls, tower):
        return cls(tower, _ZERO, 0, None, None, 0)

    @classmethod
    def imprecise_zero(cls, tower, floor_v2):
        return cls(tower, _IZERO, floor_v2, None, None, 0)

    # -- state ----------------------------------------------------------

    def is_exact_zero(self):
        return self.kind == _ZERO

    def is_imprecise_zero(self):
        return self.kind == _IZERO

    def is_unit_form(self):
        return self.kind == _UNIT

    def v2_exact(self):
        """Doubled valuation; INF for exact zero; raises on imprecise zero."""
        if self.kind == _UNIT:
            return self.v2
        if self.kind == _ZERO:
            return INF
        raise PrecisionExhausted("valuation hidden below the precision floor")

    def v2_lower(self):
        """Certified lower bound on the doubled valuation."""
        if self.kind == _UNIT:
            return self.v2
        if self.kind == _ZERO:
            return INF
        return self.v2  # the floor

    def abs2(self):
        """Doubled absolute precision: the value is known modulo w^abs2."""
        if self.kind == _UNIT:
            return self.v2 + 2 * self.prec
        if self.kind == _ZERO:
            return INF
        return self.v2

    def norm_exponent(self):
        """norm = p^(-e/2) for the returned e; INF means norm 0."""
        return self.v2_exact()

    def __bool__(self):
        return self.kind != _ZERO

    def __repr__(self):
        t = self.tower
        if self.kind == _ZERO:
            return f"PadicScalar(0; p={t.p})"
        if self.kind == _IZERO:
            return f"PadicScalar(O(w^{self.v2}); p={t.p})"
        parts = [f"v2={self.v2}", f"u={list(self.unit)}"]
        if t.ramified and any(self.runit):
            parts.append(f"u_rt={list(self.runit)}")
        parts.append(f"prec={self.prec}")
        return f"PadicScalar({', '.join(parts)}; p={t.p})"

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if not self.tower.same_field(other.tower):
            return False
        if self.kind != other.kind:
            return False
        if self.kind == _ZERO:
            return True
        if self.kind == _IZERO:
            return self.v2 == other.v2
        return (self.v2 == other.v2 and self.prec == other.prec
                and self.unit == other.unit and self.runit == other.runit)

    def __hash__(self):
        return hash((self.kind, self.v2, self.unit, self.runit))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.tower)
        self.tower.check_same(other.tower)
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.kind != _UNIT:
            return self
        pm = self.tower.p ** self.prec
        return PadicScalar(self.tower, _UNIT, self.v2,
                           tuple(-c % pm for c in self.unit),
                           tuple(-c % pm for c in self.runit), self.prec)

    def __sub__(self, other):
        other = _coerce(other, self.tower)
        self.tower.check_same(other.tower)
        return _add(self, -other)

    def __rsub__(self, other):
        return _coerce(other, self.tower) - self

    def __mul__(self, other):
        other = _coerce(other, self.tower)
        self.tower.check_same(other.tower)
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.tower)
        self.tower.check_same(other.tower)
        return _mul(self, _invert(other))

    def __rtruediv__(self, other):
        return _coerce(other, self.tower) / self

    def inverse(self):
        return _invert(self)

    def sort_key(self):
        if self.kind == _UNIT:
            return (0, self.v2, self.unit, self.runit)
        return (1, self.v2, (), ())


def _coerce(x, tower):
    if isinstance(x, PadicScalar):
        return x
    if isinstance(x, int):
        return from_rational(x, 1, tower)
    if isinstance(x, Fraction):
        return from_rational(x.numerator, x.denominator, tower)
    raise WrongShape(f"cannot coerce {type(x).__name__} into the tower")


def _normalize(tower, base_v2, A, B, floor2):
    """Canonical scalar for w^base_v2 * (A(s) + B(s) w), opaque below w^floor2."""
    p = tower.p
    if floor2 <= base_v2:
        return PadicScalar.imprecise_zero(tower, floor2)
    dA = (floor2 - base_v2 + 1) // 2
    dB = (floor2 - base_v2) // 2  # B sits half a step lower
    vA = _vec_val(A, p, dA) if dA > 0 else dA
    vB = _vec_val(B, p, dB) if dB > 0 else dB
    cands = []
    if vA < dA:
        cands.append(2 * vA)
    if vB < dB:
        cands.append(2 * vB + 1)
    if not cands:
        return PadicScalar.imprecise_zero(tower, floor2)
    rel = min(cands)
    v2r = base_v2 + rel
    prec = (floor2 - v2r) // 2
    if prec < 1:
        return PadicScalar.imprecise_zero(tower, floor2)
    prec = min(prec, tower.N)
    t, odd = divmod(rel, 2)
    pt = p ** t
    pm = p ** prec
    if not odd:
        u0 = tuple((c // pt) % pm for c in A)
        u1 = tuple((c // pt) % pm for c in B)
    else:
        u0 = tuple((c // pt) % pm for c in B)
        u1 = tuple((c // (pt * p)) % pm for c in A)
    return PadicScalar(tower, _UNIT, v2r, u0, u1, prec)


def _components(x, base_v2, digits):
    """(A, B) int lists with x = w^base_v2 (A + B w), modulo p^digits."""
    p = x.tower.p
    pm = p ** digits
    shift = x.v2 - base_v2
    t, odd = divmod(shift, 2)
    pt = p ** t
    if not odd:
        return ([c * pt % pm for c in x.unit],
                [c * pt % pm for c in x.runit])
    return ([c * pt * p % pm for c in x.runit],
            [c * pt % pm for c in x.unit])


def _add(x, y):
    tower = x.tower
    if x.kind == _ZERO:
        return y
    if y.kind == _ZERO:
        return x
    floor2 = min(x.abs2(), y.abs2())
    if x.kind == _IZERO and y.kind == _IZERO:
        return PadicScalar.imprecise_zero(tower, floor2)
    if x.kind == _IZERO or y.kind == _IZERO:
        u = x if x.kind == _UNIT else y
        if u.v2 >= floor2 - 1:
            return PadicScalar.imprecise_zero(tower, min(floor2, u.v2))
        prec = (floor2 - u.v2) // 2
        pm = tower.p ** prec
        return PadicScalar(tower, _UNIT, u.v2,
                           tuple(c % pm for c in u.unit),
                           tuple(c % pm for c in u.runit), min(prec, tower.N))
    base = min(x.v2, y.v2)
    digits = (floor2 - base + 1) // 2 + 1
    ax, bx = _components(x, base, digits)
    ay, by = _components(y, base, digits)
    A = [c + d for c, d in zip(ax, ay)]
    B = [c + d for c, d in zip(bx, by)]
    return _normalize(tower, base, A, B, floor2)


def _mul(x, y):
    tower = x.tower
    if x.kind == _ZERO or y.kind == _ZERO:
        return PadicScalar.exact_zero(tower)
    if x.kind == _IZERO or y.kind == _IZERO:
        return PadicScalar.imprecise_zero(tower, x.v2_lower() + y.v2_lower())
    prec = min(x.prec, y.prec)
    pm = tower.p ** prec
    u0 = _vec_mul(x.unit, y.unit, tower, pm)
    if any(x.runit) or any(y.runit):
        cross = _vec_mul(x.runit, y.runit, tower, pm)
        u0 = tuple((a + tower.p * b) % pm for a, b in zip(u0, cross))
        u1 = tuple((a + b) % pm for a, b in zip(
            _vec_mul(x.unit, y.runit, tower, pm),
            _vec_mul(x.runit, y.unit, tower, pm)))
    else:
        u1 = (0,) * tower.f
    return PadicScalar(tower, _UNIT, x.v2 + y.v2, u0, u1, prec)


def _invert(y):
    tower = y.tower
    if y.kind == _ZERO:
        raise DivisionByZero("division by exact zero")
    if y.kind == _IZERO:
        raise PrecisionExhausted("divisor is zero to working precision")
    prec = y.prec
    pm = tower.p ** prec
    if any(y.runit):
        # (u0 + u1 w)^-1 = (u0 - u1 w) / (u0^2 - p u1^2)
        nrm = tuple((a - tower.p * b) % pm for a, b in zip(
            _vec_mul(y.unit, y.unit, tower, pm),
            _vec_mul(y.runit, y.runit, tower, pm)))
        ninv = _vec_inv(nrm, tower, prec)
        u0 = _vec_mul(y.unit, ninv, tower, pm)
        u1 = tuple(-c % pm for c in _vec_mul(y.runit, ninv, tower, pm))
    else:
        u0 = _vec_inv(y.unit, tower, prec)
        u1 = (0,) * tower.f
    return PadicScalar(tower, _UNIT, -y.v2, u0, u1, prec)


# -- public constructors and operations --------------------------------------

def zero(tower) -> PadicScalar:
    return PadicScalar.exact_zero(tower)


def one(tower) -> PadicScalar:
    return from_rational(1, 1, tower)


def from_rational(num: int, den: int, tower: FieldTower) -> PadicScalar:
    """Image of num/den at working precision; exact zero iff num = 0."""
    if den == 0:
        raise DenominatorZero("zero denominator")
    if num == 0:
        return PadicScalar.exact_zero(tower)
    p, N = tower.p, tower.N
    vn = _ival(abs(num), p, 10 ** 9)
    vd = _ival(abs(den), p, 10 ** 9)
    un = num // p ** vn
    ud = den // p ** vd
    pm = p ** N
    u = un * pow(ud, -1, pm) % pm
    vec = (u,) + (0,) * (tower.f - 1)
    return PadicScalar(tower, _UNIT, 2 * (vn - vd), vec,
                       (0,) * tower.f, N)


def from_unit_vector(tower, v2, coeffs, rt_coeffs=None, prec=None):
    """Scalar w^v2 * (coeffs(s) + rt_coeffs(s) w); coeffs must be a unit."""
    prec = tower.N if prec is None else prec
    if v2 % 2 and not tower.ramified:
        raise WrongShape("odd v2 needs the ramified tower")
    if rt_coeffs is None:
        rt_coeffs = (0,) * tower.f
    elif any(rt_coeffs) and not tower.ramified:
        raise WrongShape("sqrt(pi) component needs the ramified tower")
    A = [int(c) for c in coeffs]
    B = [int(c) for c in rt_coeffs]
    if len(A) != tower.f or len(B) != tower.f:
        raise WrongShape("coefficient vector has wrong length")
    return _normalize(tower, v2, A, B, v2 + 2 * prec)


def lift_residue(rs: ResidueScalar, tower: FieldTower) -> PadicScalar:
    """Digit lift of a residue element: coefficients taken in {0, ..., p-1}."""
    if rs.is_zero():
        return PadicScalar.exact_zero(tower)
    return PadicScalar(tower, _UNIT, 0, tuple(rs.coeffs),
                       (0,) * tower.f, tower.N)


def pi_power(tower: FieldTower, v2: int) -> PadicScalar:
    """Scalar of norm p^(-v2/2): a power of the tower's uniformiser."""
    if v2 % 2 and not tower.ramified:
        raise WrongShape("half-integral norm needs the ramified tower")
    return PadicScalar(tower, _UNIT, v2, (1,) + (0,) * (tower.f - 1),
                       (0,) * tower.f, tower.N)


def reduce_scalar(x: PadicScalar) -> ResidueScalar:
    """Image in the residue field; requires norm <= 1; zero iff norm < 1."""
    t = x.tower
    if x.kind == _ZERO:
        return ResidueScalar.zero(t)
    if x.kind == _IZERO:
        if x.v2 > 0:
            return ResidueScalar.zero(t)
        raise PrecisionExhausted("reduction hidden below the precision floor")
    if x.v2 < 0:
        raise NormExceedsOne("norm exceeds one; no reduction")
    if x.v2 > 0:
        return ResidueScalar.zero(t)
    return ResidueScalar(t, tuple(c % t.p for c in x.unit))


def geometric_inverse(m: PadicScalar) -> PadicScalar:
    """(1 - m)^(-1) = sum m^i, truncated at working precision; norm 1."""
    t = m.tower
    if m.v2_lower() <= 0:
        raise NormNotLessThanOne("geometric series needs norm < 1")
    acc = one(t)
    term = m
    while term.v2_lower() < 2 * t.N:
        acc = acc + term
        term = term * m
        if term.kind == _ZERO:
            break
    return acc


def hensel_sqrt(a: PadicScalar):
    """Square root of a unit by Newton iteration, or None.

    The sign is fixed by lifting the lexicographically least square root in
    the residue field.  Requires p odd.
    """
    t = a.tower
    if t.p == 2:
        raise EvenPrime("square roots need p odd")
    if a.kind != _UNIT or a.v2 != 0:
        raise NotUnit("hensel_sqrt takes a unit of the tower")
    abar = reduce_scalar(a)
    root_bar = None
    from .residue import all_elements
    for x in all_elements(t):
        if x * x == abar:
            if root_bar is None or x.sort_key() < root_bar.sort_key():
                root_bar = x
    if root_bar is None:
        return None
    y = lift_residue(root_bar, t)
    half = from_rational(1, 2, t)
    for _ in range(t.N.bit_length() + 2):
        y = (y + a / y) * half
    return y


def scalar_congruent(x: PadicScalar, y: PadicScalar, v2_bound) -> bool:
    """Whether x - y is certified to have norm <= p^(-v2_bound/2)."""
    return (x - y).v2_lower() >= v2_bound
