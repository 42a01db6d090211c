import random

import pytest

from stopred import codes, gf2
from stopred.gf2 import BitMatrix


@pytest.fixture(scope="session")
def golay():
    return codes.golay24()


@pytest.fixture(scope="session")
def qr():
    return codes.extended_qr48()


def random_full_rank(rng: random.Random, m: int, n: int) -> BitMatrix:
    while True:
        rows = tuple(rng.getrandbits(n) for _ in range(m))
        M = BitMatrix(rows, n)
        if gf2.rank(M) == m:
            return M


@pytest.fixture
def rng():
    return random.Random(20240611)
