from __future__ import annotations

import json
import pathlib

import pytest

FIXTURES = json.loads((pathlib.Path(__file__).parent / "data" / "fixtures.json").read_text())


def rel_err(actual: float, expected: float) -> float:
    return abs(actual - expected) / max(abs(expected), 1e-300)


@pytest.fixture(scope="session")
def fixtures() -> dict:
    return FIXTURES


def cases(name: str):
    """Parametrize rows of a frozen fixture table."""
    return pytest.mark.parametrize("row", FIXTURES[name], ids=lambda r: ",".join(map(str, r[:-1])))




def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion, when that module ran."""
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        entries = results[criterion]
        failed = [detail for ok, detail in entries if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = "; ".join(failed) if failed else "; ".join(d for _, d in entries)
        terminalreporter.write_line(f"criterion {criterion}: {status} - {detail}")
