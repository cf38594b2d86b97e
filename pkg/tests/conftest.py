import pytest

_CRITERIA: dict[int, tuple[str, bool, str]] = {}


class _Recorder:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.note = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        _CRITERIA[self.number] = (self.title, exc_type is None, self.note)
        return False


@pytest.fixture
def criterion():
    """``with criterion(3, "title") as c: ...`` records a pass/fail line."""
    return _Recorder


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, note = _CRITERIA[number]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
        if note:
            line += f" ({note})"
        terminalreporter.write_line(line)
