import random

import pytest

from padspec import FieldTower, PMatrix, from_rational, inverse
from padspec.pmatrix import random_unitary, slack


def assert_congruent(x, y, v2_bound, msg=""):
    diff = x - y
    assert diff.v2_lower() >= v2_bound, \
        f"{msg} difference valuation {diff.v2_lower()} < {v2_bound}"


def planted_diagonalisable(tower, n, rng, value_digits=4):
    """(matrix, conjugator, eigenvalues) with a planted unitary conjugation."""
    u0 = random_unitary(tower, n, rng)
    lams = [from_rational(rng.randrange(tower.p ** value_digits), 1, tower)
            for _ in range(n)]
    mat = u0 @ PMatrix.diagonal(tower, lams) @ inverse(u0)
    return mat, u0, lams


def sized_tower(p, n, extra=10, f=1, ramified=False):
    """Tower wide enough for the n-dimensional slack budget."""
    probe = FieldTower(p, f, ramified, 30)
    s = slack(n, probe)
    return FieldTower(p, f, ramified, n * s + extra)


@pytest.fixture
def rng():
    return random.Random(20240817)
