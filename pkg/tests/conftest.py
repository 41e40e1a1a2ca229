import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from limitlab.canon import iso_class_graphs


@pytest.fixture(scope="session")
def small_graphs():
    """One representative per isomorphism class, 0..6 vertices."""
    return [G for n in range(7) for G in iso_class_graphs(n)]


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in sorted(_acceptance):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.1f}s)")
