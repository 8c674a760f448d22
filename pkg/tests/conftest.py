import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion(n, ok, detail)``; the line is printed in the terminal
    summary and the test fails when ``ok`` is false.
    """

    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
