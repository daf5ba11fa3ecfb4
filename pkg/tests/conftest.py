import pytest

from hmfconverse.numfield import Field


@pytest.fixture(scope="session")
def Q5():
    return Field(5)


@pytest.fixture(scope="session")
def Q3():
    return Field(3)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
