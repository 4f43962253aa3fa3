import functools

import pytest

from regideal.grammar import parse_ring


@functools.lru_cache(maxsize=None)
def ring(text: str):
    return parse_ring(text)


@pytest.fixture
def R():
    return ring


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
