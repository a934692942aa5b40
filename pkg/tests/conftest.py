import pytest

from interval_orders.counts import build

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def table200():
    return build(200)


@pytest.fixture(scope="session")
def table12():
    return build(12)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
