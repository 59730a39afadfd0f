"""Spectral layer: reductive spectra, idempotent lifting, partitions of unity."""

import random

import pytest

from padspec import (FieldTower, PMatrix, from_rational, lift_idempotent,
                     lift_residue, matrix_reduction, norm_le, one,
                     partition_of_unity, pi_power, reductive_spectrum,
                     scalar_congruent, sigma_classes, sup_norm_v2, zero)
from padspec.errors import (NormNotOne, NotApproxIdempotent,
                            ReductionNotDiagonalisable, ZeroMatrix)
from padspec.pmatrix import random_unitary, slack, vec_sup_v2
from padspec.spectral import _evaluate_lifted_poly
from padspec.residue import lagrange_idempotents

T = FieldTower(5, 1, False, 14)


def pauli_x(tower):
    return PMatrix.from_rationals(tower, [[0, 1], [1, 0]])


class TestReductiveSpectrum:
    def test_diag_one_p(self):
        spec = reductive_spectrum(
            PMatrix.from_rationals(T, [[1, 0], [0, (5, 1)]]))
        assert spec.normalizer_v2 == 0
        assert {e.coeffs[0] for e in spec.eigenvalues} == {0, 1}
        assert spec.outcome.ok

    def test_pauli_x_pm_one(self):
        spec = reductive_spectrum(pauli_x(T))
        assert {e.coeffs[0] for e in spec.eigenvalues} == {1, 4}

    def test_nilpotent_not_semisimple(self):
        spec = reductive_spectrum(PMatrix.from_rationals(T, [[0, 1], [0, 0]]))
        assert not spec.outcome.ok
        assert spec.outcome.reason == "NotSemisimple"

    def test_zero_rejected(self):
        with pytest.raises(ZeroMatrix):
            reductive_spectrum(PMatrix.zero(T, 2))

    def test_normalizer_tracks_norm(self):
        spec = reductive_spectrum(
            PMatrix.from_rationals(T, [[(25, 1), 0], [0, (125, 1)]]))
        assert spec.normalizer_v2 == 4


class TestLiftIdempotent:
    def test_exact_fixed_point(self):
        e = PMatrix.from_rationals(T, [[1, 0], [0, 0]])
        assert lift_idempotent(e) == e

    def test_scalar_one_plus_p_lifts_to_one(self):
        # hand oracle: iterate x <- 3x^2 - 2x^3 from 6 over Z/5^14
        x = 6
        for _ in range(8):
            x = (3 * x * x - 2 * x ** 3) % 5 ** 14
        lifted = lift_idempotent(PMatrix.from_rationals(T, [[6]]))
        assert lifted.rows[0][0].unit is not None
        got = lifted.rows[0][0]
        assert scalar_congruent(got, from_rational(x, 1, T), 2 * T.N)
        assert scalar_congruent(got, one(T), 2 * T.N)

    def test_polynomial_lift_becomes_idempotent(self, rng):
        mat = PMatrix.from_rationals(T, [[0, (5, 1)], [(5, 1), 1]])
        red = matrix_reduction(mat)
        from padspec import diagonalise_residue
        out = diagonalise_residue(red)
        polys = lagrange_idempotents([e for e, _ in out.eigenvalues])
        for poly in polys:
            approx = _evaluate_lifted_poly(poly, mat)
            lifted = lift_idempotent(approx)
            assert norm_le(lifted @ lifted - lifted, 2 * T.N)

    def test_rejects_far_from_idempotent(self):
        with pytest.raises(NotApproxIdempotent):
            lift_idempotent(PMatrix.from_rationals(T, [[2]]))


def check_partition_invariants(mat, pou, rng, n_vectors=6):
    tower = mat.tower
    n = mat.n
    c2 = pou.certified_v2
    projections = pou.projections()
    total = PMatrix.zero(tower, n)
    for proj in projections:
        total = total + proj
        assert norm_le(proj @ proj - proj, c2)
        assert norm_le(proj @ mat - mat @ proj, c2)
        assert sup_norm_v2(proj) == 0
    assert norm_le(total - PMatrix.identity(tower, n), c2)
    for i, a in enumerate(projections):
        for j, b in enumerate(projections):
            if i != j:
                assert norm_le(a @ b, c2)
    # orthonormal system of projections
    for _ in range(4):
        coeffs = [from_rational(rng.randrange(-5 ** 6, 5 ** 6) or 1,
                                rng.randrange(1, 50), tower)
                  for _ in projections]
        combo = PMatrix.zero(tower, n)
        for c, proj in zip(coeffs, projections):
            combo = combo + proj.scale(c)
        assert sup_norm_v2(combo) == vec_sup_v2(coeffs)
    # orthogonal property on vectors
    for _ in range(n_vectors):
        v = tuple(from_rational(rng.randrange(-5 ** 6, 5 ** 6),
                                rng.randrange(1, 50), tower)
                  for _ in range(n))
        norms = [vec_sup_v2(proj.apply(v)) for proj in projections]
        assert vec_sup_v2(v) == min(norms)


class TestPartitionOfUnity:
    def test_diag_zero_one(self, rng):
        mat = PMatrix.from_rationals(T, [[0, 0], [0, 1]])
        pou = partition_of_unity(mat)
        assert [ev.coeffs[0] for ev, _ in pou.classes] == [0, 1]
        p0, p1 = pou.projections()
        assert norm_le(p0 - PMatrix.from_rationals(T, [[1, 0], [0, 0]]),
                       pou.certified_v2)
        assert norm_le(p1 - PMatrix.from_rationals(T, [[0, 0], [0, 1]]),
                       pou.certified_v2)

    def test_single_class_gives_identity(self):
        mat = PMatrix.from_rationals(T, [[1, (5, 1)], [(10, 1), (6, 1)]])
        pou = partition_of_unity(mat)
        assert len(pou.classes) == 1
        assert pou.projections()[0] == PMatrix.identity(T, 2)

    def test_offdiagonal_example_invariants(self, rng):
        mat = PMatrix.from_rationals(T, [[0, (5, 1)], [(5, 1), 1]])
        pou = partition_of_unity(mat)
        assert len(pou.classes) == 2
        check_partition_invariants(mat, pou, rng)

    def test_random_partitions_full_invariants(self, rng):
        for _ in range(10):
            n = rng.randrange(2, 5)
            u = random_unitary(T, n, rng)
            from padspec import inverse
            lams = [from_rational(rng.randrange(5 ** 4), 1, T)
                    for _ in range(n)]
            mat = u @ PMatrix.diagonal(T, lams) @ inverse(u)
            if sup_norm_v2(mat) != 0:
                continue
            red = matrix_reduction(mat)
            from padspec import diagonalise_residue
            if not diagonalise_residue(red).ok:
                continue
            pou = partition_of_unity(mat)
            check_partition_invariants(mat, pou, rng)

    def test_restriction_shrinks_spectral_radius(self, rng):
        # restated condition: on each class the matrix minus any lift of the
        # residue eigenvalue has norm < 1, and different classes differ by a
        # unit at the residue level
        mat = PMatrix.from_rationals(T, [[0, (5, 1)], [(5, 1), 1]])
        pou = partition_of_unity(mat)
        for ev, proj in pou.classes:
            lam = lift_residue(ev, T)
            shrunk = (mat.shift(lam)) @ proj
            assert sup_norm_v2(shrunk) >= 1
        (ev_a, _), (ev_b, _) = pou.classes
        assert not (ev_a - ev_b).is_zero()

    def test_lift_independence(self, rng):
        # two different coefficient lifts of the Lagrange idempotent give the
        # same projection modulo the certified slack
        mat = PMatrix.from_rationals(T, [[0, (5, 1)], [(5, 1), 1]])
        red = matrix_reduction(mat)
        from padspec import diagonalise_residue
        out = diagonalise_residue(red)
        eigs = [e for e, _ in out.eigenvalues]
        poly = lagrange_idempotents(eigs)[0]
        base = lift_idempotent(_evaluate_lifted_poly(poly, mat))
        # perturb the digit lift by random multiples of p
        acc = PMatrix.zero(T, 2)
        for c in reversed(poly.coeffs):
            acc = acc @ mat
            lift = lift_residue(c, T) + from_rational(
                5 * rng.randrange(5 ** 5), 1, T)
            acc = acc.shift(-lift)
        other = lift_idempotent(acc)
        s = slack(2, T)
        assert norm_le(base - other, 2 * (T.N - s))

    def test_norm_not_one_rejected(self):
        with pytest.raises(NormNotOne):
            partition_of_unity(PMatrix.from_rationals(T, [[(5, 1)]]))

    def test_not_diagonalisable_certificate(self):
        with pytest.raises(ReductionNotDiagonalisable) as err:
            partition_of_unity(PMatrix.from_rationals(T, [[0, 1], [0, 0]]))
        assert err.value.certificate.reason == "NotSemisimple"


class TestSigmaClasses:
    def test_diag_zero_one_two_classes(self):
        assert len(sigma_classes(
            PMatrix.from_rationals(T, [[0, 0], [0, 1]]))) == 2

    def test_congruent_eigenvalues_single_class(self):
        # diag(1, 1+p): both eigenvalues reduce to 1 at the matrix's own scale
        mat = PMatrix.from_rationals(T, [[1, 0], [0, (6, 1)]])
        classes = sigma_classes(mat)
        assert len(classes) == 1
        assert classes[0].eigenvalue.coeffs == (1,)

    def test_pauli_two_classes(self):
        classes = sigma_classes(pauli_x(T))
        assert {c.eigenvalue.coeffs[0] for c in classes} == {1, 4}
        assert all(c.rank == 1 for c in classes)
