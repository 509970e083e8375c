import pytest

from subspace_lab.field import make_field
from subspace_lab.grassmann import Grassmannian

ACCEPTANCE_LINES: list[str] = []

_CACHE: dict = {}


def grassmannian(p: int, m: int, k: int = 1) -> Grassmannian:
    key = (p, k, m)
    if key not in _CACHE:
        _CACHE[key] = Grassmannian(make_field(p, k), m)
    return _CACHE[key]


@pytest.fixture(scope="session")
def gf2():
    return make_field(2)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def G22():
    return grassmannian(2, 2)


@pytest.fixture(scope="session")
def G32():
    return grassmannian(3, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
