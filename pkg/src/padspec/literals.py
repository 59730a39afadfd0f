"""Scalar literal syntax shared by the CLI and the JSON formats.

Forms:
    "a/b"                  rational (a bare integer means a/1)
    "d_k...d_1d_0@p"       base-p digit string, rightmost digit = units
                           digit; an optional leading ellipsis is cosmetic;
                           the digit count fixes the known precision; an
                           optional "/p^k" suffix divides by a p-power
    "(x)+(y)*s"            unramified extension coordinates (s^k via *s^k)
    "(x)*rt"               a sqrt(pi) factor for the ramified step

Terms combine with "+".  An all-zero digit string is exact zero.  Rendering
inverts parsing bit-identically; entries that are zero at working precision
render as "0/1".
"""

import re

from .errors import BadLiteral, DigitOutOfRange
from .scalar import (INF, PadicScalar, from_rational, from_unit_vector,
                     pi_power, zero)
from .tower import FieldTower

_TERM_RE = re.compile(
    r"^\((?P<inner>[^()]+)\)"
    r"(?P<shas>\*s(?:\^(?P<spow>\d+))?)?"
    r"(?P<rt>\*rt)?$")
_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")
_DIGITS_RE = re.compile(
    r"^(?:\.\.\.|…)?(?P<digits>[0-9]+)@(?P<p>\d+)(?:/(?P<den>\d+))?$")


def _parse_simple(text, tower):
    """Rational or digit-string literal -> (scalar, doubled abs precision)."""
    text = text.strip()
    if _RATIONAL_RE.match(text):
        num, _, den = text.partition("/")
        num, den = int(num), int(den or 1)
        if den == 0:
            raise BadLiteral(f"zero denominator in {text!r}")
        x = from_rational(num, den, tower)
        return x, (INF if x.is_exact_zero() else x.v2 + 2 * tower.N)
    m = _DIGITS_RE.match(text)
    if m:
        if int(m.group("p")) != tower.p:
            raise BadLiteral(
                f"digit string is base {m.group('p')}, tower has p = {tower.p}")
        digits = m.group("digits")
        if any(int(d) >= tower.p for d in digits):
            raise DigitOutOfRange(f"digit out of range in {text!r}")
        value = 0
        for d in digits:   # leftmost printed digit is most significant
            value = value * tower.p + int(d)
        shift = 0
        if m.group("den"):
            den = int(m.group("den"))
            while den > 1 and den % tower.p == 0:
                den //= tower.p
                shift += 1
            if den != 1:
                raise BadLiteral("digit-string denominators must be p-powers")
        if value == 0:
            return zero(tower), INF
        x = from_rational(value, tower.p ** shift, tower)
        return x, 2 * (len(digits) - shift)
    raise BadLiteral(f"cannot read scalar literal {text!r}")


def _truncate(x: PadicScalar, abs2):
    if abs2 == INF or not x.is_unit_form():
        return x
    prec = min(x.prec, int(abs2 - x.v2) // 2)
    if prec < 1:
        return PadicScalar.imprecise_zero(x.tower, int(abs2))
    pm = x.tower.p ** prec
    return PadicScalar(x.tower, 1, x.v2,
                       tuple(c % pm for c in x.unit),
                       tuple(c % pm for c in x.runit), prec)


def parse_scalar_literal(text: str, tower: FieldTower) -> PadicScalar:
    text = text.strip().replace(" ", "")
    if not text:
        raise BadLiteral("empty literal")
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "+" and depth == 0 and i > start:
            terms.append(text[start:i])
            start = i + 1
    terms.append(text[start:])
    total = zero(tower)
    floor2 = INF
    for term in terms:
        m = _TERM_RE.match(term)
        if m:
            base, abs2 = _parse_simple(m.group("inner"), tower)
            spow = 0
            if m.group("shas"):
                spow = int(m.group("spow") or 1)
            if spow and tower.f < 2:
                raise BadLiteral("generator s needs an extension tower")
            for _ in range(spow):
                base = base * from_unit_vector(
                    tower, 0, (0, 1) + (0,) * (tower.f - 2))
            if m.group("rt"):
                if not tower.ramified:
                    raise BadLiteral("rt factor needs the ramified tower")
                base = base * pi_power(tower, 1)
                abs2 = abs2 if abs2 == INF else abs2 + 1
        else:
            base, abs2 = _parse_simple(term, tower)
        total = total + base
        floor2 = min(floor2, abs2)
    return _truncate(total, floor2)


def _digit_string(value: int, digits: int, p: int, shift: int) -> str:
    out = []
    for _ in range(digits):
        out.append(str(value % p))
        value //= p
    body = "".join(reversed(out)) + f"@{p}"
    if shift:
        body += f"/{p ** shift}"
    return body


def render_scalar(x: PadicScalar) -> str:
    """Literal that re-parses to the very same scalar; entries that are zero
    at working precision render as the zero rational."""
    if x.is_exact_zero() or x.is_imprecise_zero():
        return "0/1"
    tower = x.tower
    p = tower.p
    t, odd = divmod(x.v2, 2)
    if odd:
        kpart, rtpart = x.runit, x.unit
        kshift, rtshift = t + 1, t
    else:
        kpart, rtpart = x.unit, x.runit
        kshift = rtshift = t
    terms = []
    for j in range(tower.f):
        for coeff, shift, rt in ((kpart[j], kshift, False),
                                 (rtpart[j], rtshift, True)):
            if coeff == 0:
                continue
            if shift >= 0:
                lit = _digit_string(coeff * p ** shift, x.prec + shift, p, 0)
            else:
                lit = _digit_string(coeff, x.prec, p, -shift)
            suffix = ""
            if j == 1:
                suffix = "*s"
            elif j > 1:
                suffix = f"*s^{j}"
            if rt:
                suffix += "*rt"
            terms.append(f"({lit}){suffix}")
    if not terms:   # all stored digits vanished: zero at precision
        return "0/1"
    return "+".join(terms)
