import os

import pytest
from hypothesis import HealthCheck, settings

from newtonmot.laurent import LaurentPoly

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

X = LaurentPoly.x()
Y = LaurentPoly.y()


def deg10():
    x, y = X, Y
    return (
        x**6 * y**4
        + (4 * x**5 + 3 * x**4) * y**3
        + (6 * x**4 + 11 * x**3 + 3 * x**2) * y**2
        + (4 * x**3 + 13 * x**2 + 2 * x + 1) * y
        + x**2
        + 5 * x
        + 1
    )


def broughton():
    return X * (X * Y - 1)


@pytest.fixture
def f_deg10():
    return deg10()


@pytest.fixture
def f_broughton():
    return broughton()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.status_lines():
        terminalreporter.write_line(line)
