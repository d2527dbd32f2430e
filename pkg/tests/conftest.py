import pytest

from halfsign.arith import sieve
from halfsign.modforms import catalog_form

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def delta_1e5():
    return catalog_form("delta", 100001)


@pytest.fixture(scope="session")
def primes_1e5():
    return sieve(10**5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
