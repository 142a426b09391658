import pytest

from vislat.lattice import square_lattice

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def z2():
    return square_lattice(2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
