"""Registry of inequality and identity checks evaluated over parameter grids.

>>> from pkspecial.verifier import run_check
>>> run_check("eq_4_12_functional").verdict.value
'PASS'
"""
from __future__ import annotations

from .core import (
    DEFAULT_TOL,
    TOL_STRICT,
    CheckContext,
    CheckInfo,
    CheckReport,
    GridSpec,
    Verdict,
    format_float,
    get_check,
    list_checks,
    register,
    reports_to_csv,
    reports_to_json,
    reports_to_text,
    run_all,
    run_check,
    summarize,
)

__all__ = [
    "DEFAULT_TOL",
    "TOL_STRICT",
    "CheckContext",
    "CheckInfo",
    "CheckReport",
    "GridSpec",
    "Verdict",
    "format_float",
    "get_check",
    "list_checks",
    "register",
    "reports_to_csv",
    "reports_to_json",
    "reports_to_text",
    "run_all",
    "run_check",
    "summarize",
]
