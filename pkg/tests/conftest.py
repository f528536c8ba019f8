import random
from fractions import Fraction

import pytest

from malcev.pi.freealg.poly import FreePoly
from malcev.pi.normalforms.as2 import As2NormalForm
from malcev.pi.normalforms.as3 import As3NormalForm
from malcev.pi.oracle.tideal import TIdealOracle


@pytest.fixture(scope="session")
def oracle():
    return TIdealOracle()


@pytest.fixture(scope="session")
def as2(oracle):
    return As2NormalForm(oracle)


@pytest.fixture(scope="session")
def as3(oracle):
    return As3NormalForm(oracle)


def random_word(rng: random.Random, degree: int, generators: int):
    return tuple(rng.randint(1, generators) for _ in range(degree))


def random_poly(rng: random.Random, max_degree: int = 5, generators: int = 3, terms: int = 4) -> FreePoly:
    """A few words of one random multidegree (permutations of one letter multiset), coefficients in [-9, 9]."""
    letters = list(random_word(rng, rng.randint(1, max_degree), generators))
    out = {}
    for _ in range(terms):
        rng.shuffle(letters)
        out[tuple(letters)] = out.get(tuple(letters), 0) + Fraction(rng.randint(-9, 9))
    return FreePoly.from_letters(out)


@pytest.fixture
def rng():
    return random.Random(20240917)
