from __future__ import annotations

CRITERIA: dict[int, tuple[str, str, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = ""):
    CRITERIA[number] = ("PASS" if passed else "FAIL", title, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status, title, detail = CRITERIA[n]
        line = f"[{status}] criterion {n:2d}: {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
