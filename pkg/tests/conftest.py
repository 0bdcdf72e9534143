import math

import pytest

from plapratio.grid import box, interval, rectangle
from plapratio.solver_nd import exact_principal_p2, principal_eigenpair

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def square_p2():
    return principal_eigenpair(rectangle(n=128), 2.0)


@pytest.fixture(scope="session")
def square_p3():
    return principal_eigenpair(rectangle(n=64), 3.0)


@pytest.fixture(scope="session")
def square_p15():
    return principal_eigenpair(rectangle(n=64), 1.5)


@pytest.fixture(scope="session")
def unit_interval_p2():
    return principal_eigenpair(interval(0.0, 1.0, 256), 2.0)


@pytest.fixture(scope="session")
def unit_interval_p3():
    return principal_eigenpair(interval(0.0, 1.0, 256), 3.0)


@pytest.fixture(scope="session")
def centered_interval_exact():
    # sqrt(2) cos(pi x) on (-1/2, 1/2); node at the origin
    return exact_principal_p2(interval(-0.5, 0.5, 255))


@pytest.fixture(scope="session")
def centered_cube_exact():
    return exact_principal_p2(box(n=31, origin=(-0.5, -0.5, -0.5)))


@pytest.fixture(scope="session")
def pi2():
    return math.pi ** 2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
