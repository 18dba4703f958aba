import os

import pytest

from k3lat.bundle import Bundle

DATA = os.path.join(os.path.dirname(__file__), "..", "src", "k3lat", "data")
FIBRATIONS = os.path.join(DATA, "fibrations")


@pytest.fixture(scope="session")
def bundle():
    return Bundle()


def fibration_path(name):
    return os.path.join(FIBRATIONS, f"{name}.json")


# one line per acceptance criterion, echoed again in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
