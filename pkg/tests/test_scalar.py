"""Arithmetic kernel: valuations, ultrametric norms, Hensel square roots."""

import random
from fractions import Fraction

import pytest

from padspec import (FieldTower, from_rational, from_unit_vector,
                     geometric_inverse, hensel_sqrt, one, pi_power,
                     reduce_scalar, scalar_congruent, zero)
from padspec.errors import (DenominatorZero, DivisionByZero, EvenPrime,
                            NormExceedsOne, NormNotLessThanOne, NotUnit,
                            PrecisionExhausted, TowerMismatch)
from padspec.residue import ResidueScalar

T5 = FieldTower(5, 1, False, 12)


def frac_v5(fr):
    n, d, v = fr.numerator, fr.denominator, 0
    if n == 0:
        return None
    while n % 5 == 0:
        n //= 5
        v += 1
    while d % 5 == 0:
        d //= 5
        v -= 1
    return v


class TestFromRational:
    def test_fifty(self):
        x = from_rational(50, 1, T5)
        assert x.v2 == 4
        assert x.unit[0] % 5 == 2

    def test_zero_numerator(self):
        assert from_rational(0, 7, T5).is_exact_zero()

    def test_third_by_extended_gcd_oracle(self):
        t = FieldTower(5, 1, False, 4)
        x = from_rational(1, 3, t)
        # oracle: solve 3u = 1 mod 5^4
        u = pow(3, -1, 5 ** 4)
        assert x.unit[0] == u

    def test_zero_denominator(self):
        with pytest.raises(DenominatorZero):
            from_rational(1, 0, T5)


class TestRingOps:
    def test_two_plus_three(self):
        s = from_rational(2, 1, T5) + from_rational(3, 1, T5)
        assert s.v2 == 2

    def test_multiplicative_inverse_identity(self, rng):
        for _ in range(50):
            x = from_rational(rng.randrange(1, 10 ** 6),
                              rng.randrange(1, 10 ** 4), T5)
            y = x * x.inverse()
            assert y.v2 == 0 and y.unit[0] == 1

    def test_ultrametric_with_rational_oracle(self, rng):
        for _ in range(1000):
            fa = Fraction(rng.randrange(-999, 1000), rng.randrange(1, 999))
            fb = Fraction(rng.randrange(-999, 1000), rng.randrange(1, 999))
            if 0 in (fa, fb) or fa + fb == 0:
                continue
            xa = from_rational(fa.numerator, fa.denominator, T5)
            xb = from_rational(fb.numerator, fb.denominator, T5)
            sm = xa + xb
            want = 2 * frac_v5(fa + fb)
            if sm.is_unit_form():
                assert sm.v2 == want
            va, vb = 2 * frac_v5(fa), 2 * frac_v5(fb)
            assert min(va, vb) <= (sm.v2_lower() if not sm.is_unit_form()
                                   else sm.v2)
            if va != vb:
                assert sm.is_unit_form() and sm.v2 == min(va, vb)

    def test_multiplicativity_of_valuation(self, rng):
        for _ in range(300):
            x = from_rational(rng.randrange(1, 10 ** 5),
                              rng.randrange(1, 10 ** 3), T5)
            y = from_rational(rng.randrange(1, 10 ** 5),
                              rng.randrange(1, 10 ** 3), T5)
            assert (x * y).v2 == x.v2 + y.v2

    def test_ring_axioms_randomized(self, rng):
        xs = [from_rational(rng.randrange(-10 ** 4, 10 ** 4),
                            rng.randrange(1, 100), T5) for _ in range(12)]
        bound = 2 * T5.N - 8
        for a in xs[:4]:
            for b in xs[4:8]:
                for c in xs[8:]:
                    lhs = (a + b) * c
                    rhs = a * c + b * c
                    assert (lhs - rhs).v2_lower() >= bound
                    assert ((a * b) * c - a * (b * c)).v2_lower() >= bound

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            one(T5) / zero(T5)

    def test_tower_mismatch(self):
        other = FieldTower(7, 1, False, 12)
        with pytest.raises(TowerMismatch):
            one(T5) + one(other)

    def test_total_cancellation_is_imprecise_zero(self):
        a = from_rational(7, 3, T5)
        d = a - a
        assert d.is_imprecise_zero()
        assert d.v2 == 2 * T5.N
        with pytest.raises(PrecisionExhausted):
            d.v2_exact()


class TestGeometricInverse:
    def test_zero_gives_one(self):
        g = geometric_inverse(zero(T5))
        assert g.v2 == 0 and g.unit[0] == 1

    def test_m_equals_p_truncated_series(self):
        t = FieldTower(5, 1, False, 4)
        g = geometric_inverse(from_rational(5, 1, t))
        assert g.unit[0] % 5 ** 4 == 1 + 5 + 25 + 125

    def test_multiply_back(self, rng):
        for _ in range(40):
            m = from_rational(5 * rng.randrange(1, 10 ** 4),
                              rng.randrange(1, 100), T5)
            if m.v2 <= 0:
                continue
            g = geometric_inverse(m)
            assert scalar_congruent((one(T5) - m) * g, one(T5), 2 * T5.N)

    def test_rejects_units(self):
        with pytest.raises(NormNotLessThanOne):
            geometric_inverse(one(T5))


class TestHenselSqrt:
    def test_sqrt_one(self):
        y = hensel_sqrt(one(T5))
        assert y.v2 == 0 and y.unit[0] == 1

    def test_sqrt_minus_one_digit_string(self):
        # the square root of -1 over Q_5 printing as ...431212
        i = hensel_sqrt(from_rational(-1, 1, T5))
        assert i.unit[0] % 25 == 7
        digits = []
        u = i.unit[0]
        for _ in range(6):
            digits.append(u % 5)
            u //= 5
        assert digits == [2, 1, 2, 1, 3, 4]

    def test_sqrt_two_has_no_root(self):
        # exhaustive: squares mod 5 are {0, 1, 4}
        assert {x * x % 5 for x in range(5)} == {0, 1, 4}
        assert hensel_sqrt(from_rational(2, 1, T5)) is None

    def test_square_relation(self, rng):
        hits = 0
        while hits < 25:
            a = from_rational(rng.randrange(1, 10 ** 5), 1, T5)
            if a.v2 != 0:
                continue
            y = hensel_sqrt(a)
            if y is None:
                continue
            hits += 1
            assert scalar_congruent(y * y, a, 2 * (T5.N - 1))

    def test_even_prime_rejected(self):
        t2 = FieldTower(2, 1, False, 8)
        with pytest.raises(EvenPrime):
            hensel_sqrt(one(t2))

    def test_non_unit_rejected(self):
        with pytest.raises(NotUnit):
            hensel_sqrt(from_rational(5, 1, T5))

    def test_lexicographically_least_root_in_extension(self):
        t = FieldTower(3, 2, False, 8)
        i = hensel_sqrt(from_rational(-1, 1, t))
        # modulus is x^2 + 1, so s itself is a root; (0,1) < (0,2)
        assert reduce_scalar(i).coeffs == (0, 1)


class TestReduceScalar:
    def test_uniformiser_reduces_to_zero(self):
        assert reduce_scalar(from_rational(5, 1, T5)).is_zero()

    def test_seven_mod_five(self):
        assert reduce_scalar(from_rational(7, 1, T5)).coeffs == (2,)

    def test_homomorphism_on_units(self, rng):
        for _ in range(200):
            a = from_rational(rng.randrange(1, 10 ** 5), 1, T5)
            b = from_rational(rng.randrange(1, 10 ** 5), 1, T5)
            if a.v2 or b.v2:
                continue
            assert reduce_scalar(a * b) == reduce_scalar(a) * reduce_scalar(b)
            assert reduce_scalar(a + b) == reduce_scalar(a) + reduce_scalar(b)

    def test_norm_exceeding_one_rejected(self):
        with pytest.raises(NormExceedsOne):
            reduce_scalar(from_rational(1, 5, T5))


class TestRamifiedTower:
    def test_uniformiser_squares_to_p(self):
        t = FieldTower(5, 1, True, 8)
        w = pi_power(t, 1)
        assert scalar_congruent(w * w, from_rational(5, 1, t), 16)

    def test_half_integral_norms(self):
        t = FieldTower(5, 1, True, 8)
        w = pi_power(t, 1)
        x = from_rational(3, 1, t) + w
        assert x.v2 == 0
        assert (x * w).v2 == 1

    def test_inverse_in_ramified_step(self, rng):
        t = FieldTower(5, 1, True, 10)
        w = pi_power(t, 1)
        for _ in range(30):
            a = from_rational(rng.randrange(1, 5 ** 6), 1, t)
            b = from_rational(rng.randrange(0, 5 ** 6), 1, t)
            x = a + b * w
            assert scalar_congruent(x * x.inverse(), one(t), 2 * (t.N - 1))

    def test_unramified_extension_arithmetic(self, rng):
        t = FieldTower(3, 2, False, 8)
        gen = from_unit_vector(t, 0, (0, 1))
        # modulus x^2 + 1: the generator squares to -1
        assert scalar_congruent(gen * gen, from_rational(-1, 1, t), 16)
        for _ in range(20):
            a = from_rational(rng.randrange(1, 3 ** 6), 1, t)
            b = from_rational(rng.randrange(1, 3 ** 6), 1, t)
            x = a + b * gen
            assert scalar_congruent(x * x.inverse(), one(t), 2 * (t.N - 1))

    def test_residue_agrees_with_fq(self):
        t = FieldTower(3, 2, False, 8)
        gen = from_unit_vector(t, 0, (0, 1))
        x = from_rational(5, 1, t) + from_rational(4, 1, t) * gen
        assert reduce_scalar(x) == ResidueScalar(t, (2, 1))
