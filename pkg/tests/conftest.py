import pytest

from instances import reference_instance


@pytest.fixture(scope="session")
def reference():
    return reference_instance()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance check."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" in report.nodeid:
                rows.append((report.nodeid.split("::")[-1], outcome))
    if rows:
        terminalreporter.write_sep("-", "acceptance checks")
        for name, outcome in rows:
            terminalreporter.write_line(
                f"[{'PASS' if outcome == 'passed' else 'FAIL'}] {name}"
            )
