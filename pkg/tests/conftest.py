import pytest

_CRITERIA = {}


@pytest.fixture
def record_criterion():
    """Record one acceptance clause: record(number, label, passed, detail)."""

    def record(number, label, passed, detail=""):
        _CRITERIA.setdefault(number, []).append((label, bool(passed), detail))
        print(f"criterion {number} [{label}]: {'PASS' if passed else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        parts = _CRITERIA[number]
        ok = all(p for _, p, _ in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}")
        for label, passed, detail in parts:
            if not passed or len(parts) > 1:
                terminalreporter.write_line(f"    {label}: {'pass' if passed else 'FAIL'} {detail}")
