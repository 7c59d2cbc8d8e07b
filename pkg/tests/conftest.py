"""Shared fixtures and the acceptance-summary terminal hook."""
from __future__ import annotations

import pytest

from truecount import get_system

#: Populated by tests/test_acceptance.py; one line per criterion.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def hi_lo():
    return get_system("hi-lo")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
