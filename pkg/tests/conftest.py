import random
from fractions import Fraction

import pytest

from troprank.core import DissimilarityMatrix, SymmetricMatrix, project


def random_dissimilarity(rng, n, low=0, high=9):
    return DissimilarityMatrix.from_function(n, lambda i, j: rng.randint(low, high))


def random_symmetric(rng, n, low=0, high=9):
    return SymmetricMatrix.from_function(n, lambda i, j: rng.randint(low, high))


def random_finite_symmetric(rng, n, low=0, high=9):
    """Random symmetric matrix satisfying M_ii + M_jj <= 2 M_ij."""
    diag = [rng.randint(low, high) for _ in range(n)]

    def entry(i, j):
        if i == j:
            return diag[i - 1]
        floor = -(-(diag[i - 1] + diag[j - 1]) // 2)  # ceil
        return rng.randint(max(low, floor), max(high, floor))

    return SymmetricMatrix.from_function(n, entry)


def random_rational(rng, scale=20):
    return Fraction(rng.randint(-scale, scale), rng.randint(1, 7))


@pytest.fixture(scope="session")
def intro_symmetric():
    return SymmetricMatrix.from_rows(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    )


@pytest.fixture(scope="session")
def intro_dissimilarity(intro_symmetric):
    return project(intro_symmetric)


@pytest.fixture()
def rng():
    return random.Random(20240817)
