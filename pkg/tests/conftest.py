"""Shared fixtures and the acceptance-summary terminal hook."""
import sys

import pytest

# One line per acceptance criterion, printed after the run so they are
# visible even with output capture enabled.
ACCEPTANCE_LINES = []


def record_acceptance(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {criterion}: {status} — {detail}")


def record_acceptance_skip(criterion: int, reason: str) -> None:
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {criterion}: SKIP — {reason}")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
