import random

import pytest

from evencycle import _backend
from evencycle.fields import FieldCtx, make_field
from evencycle.ring4 import RingCtx

BACKENDS = ["python"] + (["compiled"] if _backend.compiled_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    with _backend.use_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture
def f8():
    return FieldCtx(3, 0b1011)  # x^3 + x + 1


@pytest.fixture
def e4():
    """E(4) = Z_4, over g2 = x + 1."""
    return RingCtx(FieldCtx(1, 0b11))


def ring_of_degree(d, seed=0):
    return RingCtx(make_field(d, random.Random(seed)))


def random_matrix(ctx, rng, n):
    return [[ctx.random(rng) for _ in range(n)] for _ in range(n)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
