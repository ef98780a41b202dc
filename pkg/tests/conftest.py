import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hedonic import fixtures as fx  # noqa: E402

_acceptance = []


@pytest.fixture
def four():
    return fx.four_player_game()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        outcome = "xfail" if hasattr(report, "wasxfail") else report.outcome
        _acceptance.append((report.nodeid.split("::")[-1], outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        label = {"passed": "PASS", "xfail": "FAIL (known, xfail)"}.get(outcome, "FAIL")
        terminalreporter.write_line(f"{label}  {name}")
