import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from toriclct.newton import Kind, SingularityInput

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

Z1Z2SQ = SingularityInput(3, ((1, 0, 0), (0, 2, 0)))
Z2Z3 = SingularityInput(2, ((2, 0), (0, 3)))


def m_power(n, s):
    from itertools import product
    gens = tuple(p for p in product(range(s + 1), repeat=n) if sum(p) == s)
    return SingularityInput(n, gens, Kind.IDEAL, f"m^{s}")


@st.composite
def ideals(draw, dims=(2, 3), max_gens=4, max_exp=5):
    n = draw(st.sampled_from(dims))
    vec = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    gens = draw(st.lists(vec, min_size=1, max_size=max_gens))
    return SingularityInput(n, tuple(gens))


@st.composite
def primary_ideals(draw, dims=(2, 3), max_gens=3, max_exp=5):
    n = draw(st.sampled_from(dims))
    axes = [tuple(draw(st.integers(1, max_exp)) if k == j else 0 for k in range(n)) for j in range(n)]
    vec = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    extra = draw(st.lists(vec, max_size=max_gens))
    return SingularityInput(n, tuple(axes + extra))


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture(params=["numba", "numpy"])
def each_backend(request, monkeypatch):
    monkeypatch.setenv("TORICLCT_BACKEND", request.param)
    return request.param


def frac(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
