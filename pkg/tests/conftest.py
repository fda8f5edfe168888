import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "reference_golden.json").read_text())


@pytest.fixture
def report():
    """Record one PASS/FAIL line for the acceptance summary."""

    def _report(label: str, ok: bool, detail: str = "") -> bool:
        _acceptance_lines.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
