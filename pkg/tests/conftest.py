"""Shared pytest glue: the acceptance summary block.

tests/test_acceptance.py records one line per criterion; this hook
prints them after the normal test summary so every run ends with a
visible PASS/FAIL line for each acceptance criterion.
"""

_ACCEPTANCE: list[tuple[str, bool]] = []


def record_acceptance(label: str, passed: bool) -> None:
    _ACCEPTANCE.append((label, passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
