"""Born-rule probabilities and the ultrametric probability axioms."""

import random

import pytest

from conftest import planted_diagonalisable, sized_tower

from padspec import (FieldTower, MeasurableSet, PDisc, PMatrix, StateVector,
                     born_probability, check_probability_axioms,
                     from_rational, one, unitary_diagonalise, zero)
from padspec.errors import NotNormal, ZeroState

T = FieldTower(5, 1, False, 16)
SX = PMatrix.from_rationals(T, [[0, 1], [1, 0]])


def disc_around(x, radius_v2=4):
    return MeasurableSet([PDisc(x, radius_v2)])


class TestBornProbability:
    def test_full_spectrum_gives_one(self):
        psi = StateVector((one(T), from_rational(3, 1, T)))
        full = MeasurableSet([PDisc(one(T), 0)])   # unit disc holds 1 and -1
        assert born_probability(SX, psi, full).is_one()

    def test_empty_set_gives_zero(self):
        psi = StateVector((one(T), from_rational(3, 1, T)))
        assert born_probability(SX, psi, MeasurableSet.empty()).is_zero()

    def test_exact_eigenvector_probabilities(self):
        plus = StateVector((one(T), one(T)))        # eigenvector for +1
        assert born_probability(SX, plus, disc_around(one(T))).is_one()
        assert born_probability(SX, plus, disc_around(-one(T))).is_zero()

    def test_ray_invariance(self, rng):
        psi = StateVector((from_rational(7, 1, T), from_rational(2, 3, T)))
        base = born_probability(SX, psi, disc_around(one(T)))
        for _ in range(10):
            gamma = from_rational(rng.randrange(1, 5 ** 6),
                                  rng.randrange(1, 5 ** 3), T)
            assert born_probability(SX, psi.scale(gamma),
                                    disc_around(one(T))) == base

    def test_values_are_exact_value_group_elements(self):
        # psi = e_1 + p e_2 written in the eigenbasis gives P = p^-m exactly
        psi = StateVector((one(T) + from_rational(5, 1, T),
                           one(T) - from_rational(5, 1, T)))
        prob = born_probability(SX, psi, disc_around(-one(T)))
        assert prob.e2 == 2           # the minus-component has norm p^-1
        assert prob.as_float() == 5.0 ** -1

    def test_non_normal_certificate(self):
        bad = PMatrix.from_rationals(T, [[0, 1], [0, 0]])
        with pytest.raises(NotNormal) as err:
            born_probability(bad, StateVector((one(T), one(T))),
                             disc_around(zero(T)))
        assert err.value.certificate.reason == "NotSemisimple"

    def test_zero_state_rejected(self):
        with pytest.raises(ZeroState):
            born_probability(SX, StateVector((zero(T), zero(T))),
                             disc_around(one(T)))


class TestAxioms:
    def test_non_additivity_witness(self):
        # property (ii): disjoint sets may both carry probability one
        e1 = StateVector((one(T), zero(T)))
        s_plus, s_minus = disc_around(one(T)), disc_around(-one(T))
        assert s_plus.is_disjoint_from(s_minus)
        assert born_probability(SX, e1, s_plus).is_one()
        assert born_probability(SX, e1, s_minus).is_one()

    def test_same_set_degenerates_to_equality(self):
        psi = StateVector((one(T), from_rational(2, 1, T)))
        s = disc_around(one(T))
        rep = check_probability_axioms(SX, psi, s, s)
        assert rep.non_archimedean_ok
        assert rep.values["P(S u S')"] == rep.values["P(S)"]

    def test_nested_sets_monotone(self):
        psi = StateVector((one(T), from_rational(2, 1, T)))
        big = MeasurableSet([PDisc(one(T), 0)])
        small = disc_around(one(T), 6)
        rep = check_probability_axioms(SX, psi, big, small)
        assert rep.monotone_ok

    def test_random_axioms(self, rng):
        for _ in range(40):
            n = rng.randrange(2, 4)
            tower = sized_tower(5, n, extra=20)
            mat, _, _ = planted_diagonalisable(tower, n, rng, value_digits=3)
            out = unitary_diagonalise(mat)
            reps = []
            for lam in out.D:
                if not any((lam - r).v2_lower() >= 6 for r in reps):
                    reps.append(lam)
            rng.shuffle(reps)
            half = max(1, len(reps) // 2)
            s1 = MeasurableSet([PDisc(r, 6) for r in reps[:half]])
            s2 = (MeasurableSet([PDisc(r, 6) for r in reps[half:]])
                  if reps[half:] else MeasurableSet.empty())
            psi = StateVector(tuple(
                from_rational(rng.randrange(1, 5 ** 5),
                              rng.randrange(1, 40), tower)
                for _ in range(n)))
            rep = check_probability_axioms(mat, psi, s1, s2, out)
            assert rep.non_archimedean_ok
            assert rep.orthogonality_ok in (True, None)
            if rep.orthogonality_ok is None:
                assert not s1.is_disjoint_from(s2)


class TestMeasurableSets:
    def test_union_keeps_maximal_discs(self):
        big = MeasurableSet([PDisc(one(T), 0)])
        small = disc_around(one(T), 6)
        u = big.union(small)
        assert len(u.discs) == 1 and u.discs[0].radius_v2 == 0

    def test_includes(self):
        big = MeasurableSet([PDisc(one(T), 0)])
        small = disc_around(one(T), 6)
        assert big.includes(small)
        assert not small.includes(big)
