import pytest

from _corpus import ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else ""))


@pytest.fixture
def record():
    """record(number, title, failures) stores the outcome and fails the test on any failure."""

    def _record(number, title, failures, detail=""):
        ACCEPTANCE[number] = (title, not failures, detail if not failures else "; ".join(failures[:5]))
        print(f"[{'PASS' if not failures else 'FAIL'}] criterion {number}: {title}")
        assert not failures, failures

    return _record
