import pytest

CRITERIA: list[tuple[int, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, passed, detail)."""
    def record(number: int, passed: bool, detail: str):
        CRITERIA.append((number, passed, detail))
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'} - {detail}")
