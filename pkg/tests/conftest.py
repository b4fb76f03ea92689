"""Shared pytest wiring: the acceptance-criteria summary block.

Acceptance tests report one line per criterion through record_criterion;
the lines are echoed after the run so the verdicts survive output capture.
"""

_CRITERION_LINES: list[str] = []


def record_criterion(number: int, label: str, ok: bool) -> None:
    _CRITERION_LINES.append(
        f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}"
    )


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERION_LINES):
            terminalreporter.line(line)
