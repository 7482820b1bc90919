import random
from fractions import Fraction

import pytest

from assocalg.catalog import catalog_algebras, get_entry, instantiate
from assocalg.exactnum import Matrix, invert


def cat(entry_id, **params):
    return instantiate(get_entry(entry_id), params)


def random_invertible(n, rng, values=(-2, -1, 0, 0, 1, 1, 2, Fraction(1, 2), Fraction(-3, 2))):
    while True:
        M = Matrix([[rng.choice(values) for _ in range(n)] for _ in range(n)], n)
        if invert(M) is not None:
            return M


@pytest.fixture(scope="session")
def all_catalog_algebras():
    return catalog_algebras()


@pytest.fixture
def rng():
    return random.Random(0)
