from __future__ import annotations

import random
from fractions import Fraction

import pytest

from thinhess.field import GF, QQ
from thinhess.linalg import Matrix
from thinhess.randomgen import random_parameter_array
from thinhess.thcore import ParameterArray

CORPUS_SIZE = 200
CORPUS_FIELDS = (QQ, GF(10007))

# criterion number -> (passed, detail); filled in by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def corpus(field):
    """The seeded acceptance corpus: array ``i`` has ``d = i % 9`` and seed ``i``."""
    return [random_parameter_array(i % 9, field, i) for i in range(CORPUS_SIZE)]


def running_example(field=QQ) -> ParameterArray:
    return ParameterArray(field, (0, 1, 2), (0, 1, 2), (1, 1))


def random_invertible(field, n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        m = Matrix(field, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if m.rank() == n:
            return m


def random_matrix(field, n: int, rng: random.Random, lo: int = -5, hi: int = 5) -> Matrix:
    return Matrix(field, [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)])


@pytest.fixture
def R():
    return running_example()


@pytest.fixture(scope="session")
def corpora():
    return {f.name: corpus(f) for f in CORPUS_FIELDS}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
