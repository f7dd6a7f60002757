import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden():
    """Values frozen by tools/oracle.py (mpmath, 40 digits)."""
    return json.loads((DATA / "golden.json").read_text())


def rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in range(1, 11):
        key = f"AC{i}"
        if key in RESULTS:
            terminalreporter.write_line(format_line(key))
        else:
            terminalreporter.write_line(f"[FAIL] {key}: not run")
