import pytest

ACCEPTANCE_RESULTS: list[tuple[str, bool, float]] = []


@pytest.fixture
def record_criterion():
    """Record ``(name, passed, seconds)`` for the acceptance summary."""

    def record(name: str, passed: bool, seconds: float) -> None:
        ACCEPTANCE_RESULTS.append((name, passed, seconds))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, seconds in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  ({seconds:.2f}s)")
