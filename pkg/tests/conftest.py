import pytest

ACCEPTANCE = []


@pytest.fixture
def report():
    """Record one acceptance line; the lines are printed in the summary."""
    def record(label, ok, detail=""):
        ACCEPTANCE.append((label, ok, detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{label}: {'PASS' if ok else 'FAIL'}  {detail}")
