import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qborwein.rings import QuadraticElement
from qborwein.series import TruncatedSeries

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        ok = _criteria.get(number, (title, True))[1] and rep.outcome == "passed"
        _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")


rationals = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)
quadratics = st.builds(lambda a, b: QuadraticElement(a, b, 73), rationals, rationals)


def random_unit_series(rng: random.Random, order: int, height: int = 3) -> TruncatedSeries:
    """Rational series with constant term 1 and small coefficients."""
    cs = [Fraction(1)]
    for _ in range(order):
        cs.append(Fraction(rng.randint(-height, height), rng.choice((1, 1, 2, 3))))
    return TruncatedSeries(tuple(cs))


@pytest.fixture
def rng():
    return random.Random(20191015)
