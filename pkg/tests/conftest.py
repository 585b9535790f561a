import pytest

CRITERIA = {}


@pytest.fixture
def record_criterion():
    def rec(num, ok, note=""):
        CRITERIA[num] = (bool(ok), note)
        return ok
    return rec


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        ok, note = CRITERIA[num]
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f"  ({note})" if note else ""))
