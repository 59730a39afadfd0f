"""Field towers Q_p -> unramified degree-f extension -> optional sqrt(p) step.

A FieldTower fixes the prime p, the unramified degree f (1, 2 or 4), whether
a square root of the uniformiser has been adjoined, and the working precision
N in base-p digits.  The unramified part is presented as Z_p[x]/(modulus) for
a monic irreducible residue polynomial of degree f.

Valuations are kept doubled throughout ("v2"), so that the ramified tower's
half-integer valuations stay exact integers: an element of norm p^(-t) has
v2 = 2t.  The uniformiser of the ramified tower is w = sqrt(p) with v2 = 1;
of an unramified tower it is p itself with v2 = 2.
"""

from .errors import PadspecError

_P_CAP = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- tiny F_p[x] layer, only for modulus selection --------------------------
# Polynomials are lists of ints in [0, p), lowest degree first, no leading 0.

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p) if m[-1] != 1 else 1
    while len(a) >= len(m):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(m)
        if c:
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
        _ptrim(a)
        if not a:
            break
    return a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod_x(e, m, p):
    # x^e mod m
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _psub_x(a, p):
    # a - x
    out = list(a) + [0] * max(0, 2 - len(a))
    out[1] = (out[1] - 1) % p
    return _ptrim(out)


def _irreducible(m, p) -> bool:
    # Rabin test: x^(p^f) = x mod m, and x^(p^(f/e)) - x coprime to m for
    # every prime divisor e of f.  Here f is 1, 2 or 4, so e = 2 only.
    f = len(m) - 1
    if f == 1:
        return True
    if _psub_x(_ppowmod_x(p ** f, m, p), p):
        return False
    for e in (2,):
        if f % e:
            continue
        diff = _psub_x(_ppowmod_x(p ** (f // e), m, p), p)
        if len(_pgcd(m, diff, p)) != 1:
            return False
    return True


def default_modulus(p: int, f: int) -> tuple:
    """Monic irreducible of degree f over F_p used to present F_{p^f}.

    Lexicographically least in the non-leading coefficients, except that
    x^2 + 1 is preferred when f = 2 and p = 3 mod 4 so that the square root
    of -1 is a basis element.
    """
    if f == 1:
        return (0, 1)
    if f == 2 and p % 4 == 3:
        return (1, 0, 1)
    # enumerate (c_0, ..., c_{f-1}) lexicographically
    total = p ** f
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        m = coeffs + [1]
        if _irreducible(m, p):
            return tuple(m)
    raise PadspecError("no irreducible modulus found")  # unreachable


class FieldTower:
    """Immutable description of the working field and precision."""

    __slots__ = ("p", "f", "ramified", "N", "modulus", "q", "pN")

    def __init__(self, p: int, f: int = 1, ramified: bool = False,
                 N: int = 8, modulus=None):
        if not _is_prime(p):
            raise PadspecError(f"p = {p} is not prime")
        if p > _P_CAP:
            raise PadspecError(f"p exceeds the desk-scale cap {_P_CAP}")
        if f not in (1, 2, 4):
            raise PadspecError(f"unramified degree f = {f} not in {{1, 2, 4}}")
        if p ** f > _P_CAP:
            raise PadspecError("residue field larger than the desk-scale cap")
        if N < 4:
            raise PadspecError("working precision N must be at least 4")
        if modulus is None:
            modulus = default_modulus(p, f)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != f + 1 or modulus[-1] != 1:
                raise PadspecError("modulus must be monic of degree f")
            if not _irreducible(list(modulus), p):
                raise PadspecError("modulus is reducible over F_p")
        self.p = p
        self.f = f
        self.ramified = bool(ramified)
        self.N = N
        self.modulus = modulus
        self.q = p ** f
        self.pN = p ** N

    # value-group granularity: v2 of the smallest uniformiser
    @property
    def uniformiser_v2(self) -> int:
        return 1 if self.ramified else 2

    def same_field(self, other: "FieldTower") -> bool:
        return (self.p == other.p and self.f == other.f
                and self.ramified == other.ramified
                and self.modulus == other.modulus)

    def __eq__(self, other):
        return (isinstance(other, FieldTower) and self.same_field(other)
                and self.N == other.N)

    def __hash__(self):
        return hash((self.p, self.f, self.ramified, self.N, self.modulus))

    def __repr__(self):
        ram = ", ramified" if self.ramified else ""
        return f"FieldTower(p={self.p}, f={self.f}{ram}, N={self.N})"

    def check_same(self, other: "FieldTower"):
        from .errors import TowerMismatch
        if not self.same_field(other) or self.N != other.N:
            raise TowerMismatch(f"{self} vs {other}")
