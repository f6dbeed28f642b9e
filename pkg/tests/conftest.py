import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, tuple[str, bool]] = {}


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        _RESULTS[number] = (title, False)

    def passed(self) -> None:
        title, _ = _RESULTS[self.number]
        _RESULTS[self.number] = (title, True)
        print(f"PASS criterion {self.number}: {title}")


@pytest.fixture
def criterion():
    """``criterion(n, title)`` marks a criterion as failing until ``.passed()`` is called."""
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        title, ok = _RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {n}. {title}")
