import contextlib

import pytest

_RESULTS = []


@contextlib.contextmanager
def _record(number, title):
    try:
        yield
    except BaseException:
        _RESULTS.append((number, title, "FAIL"))
        print(f"\n[FAIL] AC{number}: {title}")
        raise
    _RESULTS.append((number, title, "PASS"))
    print(f"\n[PASS] AC{number}: {title}")


@pytest.fixture
def criterion():
    """Context manager that records one acceptance criterion as pass/fail."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status in sorted(_RESULTS):
        terminalreporter.write_line(f"[{status}] AC{number}: {title}")
