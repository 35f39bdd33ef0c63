from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from polarfol.catalog import as_root_data
from polarfol.su1n import make_context

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def elements(n: int):
    ctx = make_context(n)
    return st.lists(small_fractions, min_size=ctx.dim,
                    max_size=ctx.dim).map(ctx.element)


@pytest.fixture(params=[2, 3, 4], ids=lambda n: f"n{n}")
def rd(request):
    return as_root_data(request.param)


@pytest.fixture
def rd2():
    return as_root_data(2)


@pytest.fixture
def rd3():
    return as_root_data(3)


def F(x, y=1):
    return Fraction(x, y)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
