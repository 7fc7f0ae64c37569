import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from owblock import default_room, grid_locations  # noqa: E402


@pytest.fixture(scope="session")
def room():
    return default_room()[0]


@pytest.fixture(scope="session")
def aps():
    return default_room()[1]


@pytest.fixture(scope="session")
def grid(room):
    return grid_locations(room)


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _ACCEPTANCE:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({duration:.2f} s)")
