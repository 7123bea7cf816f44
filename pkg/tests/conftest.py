import random

import pytest

from pvs.field import prime_field


@pytest.fixture
def gf7():
    return prime_field(7)


@pytest.fixture
def gf5():
    return prime_field(5)


@pytest.fixture
def big():
    return prime_field(2**31 - 1)


@pytest.fixture
def rng():
    return random.Random(1234)


# filled by test_acceptance.py, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
