"""Command-line front end: ``pkspecial eval|check|verify-all|sweep|list``.

Exit codes
----------
0  success (a PASS_WITH_NOTE check prints a NOTE banner and still exits 0)
1  at least one check FAILed
2  usage error: bad flag, unknown function or check id, malformed range
3  domain or evaluation error, with the violated precondition on stderr
4  I/O error writing ``--out``

Tolerances resolve as ``--tol`` flag, then the ``PKSPECIAL_TOL``
environment variable, then the built-in default.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .cz_gamma import CZParams, VExtParams, cz_gamma_result, ext_cz_gamma_result, \
    v_ext_cz_gamma_result
from .errors import ArgumentError, CapacityError, DomainError, EvaluationError
from .nielsen_beta import BetaRepresentation, pk_beta_deriv_result
from .numerics import IntegralResult, QuadratureSettings, SeriesSettings
from .pk_gamma import PKParams, pk_digamma_result, pk_gamma, pk_polygamma_result
from .verifier import (
    DEFAULT_TOL,
    GridSpec,
    Verdict,
    format_float,
    get_check,
    reports_to_csv,
    reports_to_json,
    reports_to_text,
    run_all,
    run_check,
    summarize,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

TOL_ENV = "PKSPECIAL_TOL"
MACHINE_DIGITS = 17
HUMAN_DIGITS = 10
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    """Malformed command line; maps to exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    """Resolved options shared by the subcommands.

    ``abs_tol``/``rel_tol`` of ``None`` keep the library defaults.
    """

    abs_tol: Optional[float] = None
    rel_tol: Optional[float] = None
    output_format: str = "text"
    output_path: Optional[str] = None
    seed: int = 42

    def __post_init__(self) -> None:
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value > 0):
                raise UsageError(f"{name} must be positive and finite")
        if self.output_format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")

    def quadrature(self) -> Optional[QuadratureSettings]:
        if self.rel_tol is None:
            return None
        return QuadratureSettings(abs_tol=min(QuadratureSettings().abs_tol, self.rel_tol),
                                  rel_tol=self.rel_tol)

    def series(self) -> Optional[SeriesSettings]:
        return None if self.abs_tol is None else SeriesSettings(abs_tol=self.abs_tol)


def resolve_tol(flag: Optional[float], environ=None) -> Optional[float]:
    """Flag beats environment beats default (``None``)."""
    if flag is not None:
        value = flag
    else:
        raw = (os.environ if environ is None else environ).get(TOL_ENV, "").strip()
        if not raw:
            return None
        try:
            value = float(raw)
        except ValueError:
            raise UsageError(f"{TOL_ENV} must be a number, got {raw!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise UsageError("tolerance must be positive and finite")
    return value


# ---------------------------------------------------------------------------
# evaluable functions

@dataclass(frozen=True)
class _Function:
    params: tuple[str, ...]
    defaults: dict
    integer: tuple[str, ...]
    evaluate: Callable[[dict, CliConfig], tuple[IntegralResult, str]]


_QUAD_PATH = "adaptive Gauss-Kronrod quadrature"
_BETA_PATHS = {
    BetaRepresentation.PAIRED_SERIES: "paired alternating series",
    BetaRepresentation.DIGAMMA_FORM: "digamma difference",
    BetaRepresentation.SEMI_INFINITE_INTEGRAL: "integral over (0, inf)",
    BetaRepresentation.FINITE_INTEGRAL: "integral over (0, 1)",
}


def _pk(a: dict) -> PKParams:
    return PKParams(a["p"], a["k"])


def _eval_pk_gamma(a, cfg):
    value = pk_gamma(a["x"], _pk(a))
    # closed form through math.gamma: a few ulps
    return IntegralResult(value, 8 * np.finfo(float).eps * abs(value), True, 1), "closed form"


def _eval_digamma(a, cfg):
    return pk_digamma_result(a["x"], _pk(a), cfg.series()), "digamma series"


def _eval_polygamma(a, cfg):
    return pk_polygamma_result(a["n"], a["x"], _pk(a), cfg.series()), "Hurwitz-type series"


def _eval_beta(a, cfg):
    rep = BetaRepresentation(a.get("rep", "series"))
    settings = cfg.series() if rep in (BetaRepresentation.PAIRED_SERIES,
                                       BetaRepresentation.DIGAMMA_FORM) else cfg.quadrature()
    res = pk_beta_deriv_result(a.get("n", 0), a["x"], _pk(a), rep, settings)
    return res, _BETA_PATHS[rep]


def _eval_cz(a, cfg):
    return cz_gamma_result(a.get("n", 0), a["x"], a["c"], cfg.quadrature()), _QUAD_PATH


def _eval_ext_cz(a, cfg):
    params = CZParams(a["c"], _pk(a))
    return ext_cz_gamma_result(a.get("n", 0), a["x"], params, cfg.quadrature()), _QUAD_PATH


def _eval_v_ext(a, cfg):
    params = VExtParams(a["b"], a["v"])
    return v_ext_cz_gamma_result(a.get("N", 0), a["z"], params, cfg.quadrature()), _QUAD_PATH


_PK = {"p": 1.0, "k": 1.0}
FUNCTIONS: dict[str, _Function] = {
    "pk_gamma": _Function(("x", "p", "k"), _PK, (), _eval_pk_gamma),
    "pk_digamma": _Function(("x", "p", "k"), _PK, (), _eval_digamma),
    "pk_polygamma": _Function(("n", "x", "p", "k"), _PK, ("n",), _eval_polygamma),
    "pk_beta": _Function(("x", "p", "k", "rep"), _PK, (), _eval_beta),
    "pk_beta_deriv": _Function(("n", "x", "p", "k", "rep"), _PK, ("n",), _eval_beta),
    "cz_gamma": _Function(("x", "c"), {"c": 0.0}, (), _eval_cz),
    "cz_gamma_deriv": _Function(("n", "x", "c"), {"c": 0.0}, ("n",), _eval_cz),
    "ext_cz_gamma": _Function(("x", "c", "p", "k"), {"c": 0.0, **_PK}, (), _eval_ext_cz),
    "ext_cz_gamma_deriv": _Function(("n", "x", "c", "p", "k"), {"c": 0.0, **_PK}, ("n",),
                                    _eval_ext_cz),
    "v_ext_cz_gamma": _Function(("z", "b", "v"), {"b": 0.0, "v": 1.0}, (), _eval_v_ext),
    "v_ext_cz_gamma_deriv": _Function(("N", "z", "b", "v"), {"b": 0.0, "v": 1.0}, ("N",),
                                      _eval_v_ext),
}
_STRING_ARGS = {"rep": tuple(r.value for r in BetaRepresentation)}


def _lookup(name: str) -> _Function:
    try:
        return FUNCTIONS[name]
    except KeyError:
        raise UsageError(f"unknown function {name!r}; choose from "
                         f"{', '.join(sorted(FUNCTIONS))}") from None


def _split_assignment(token: str) -> tuple[str, str]:
    key, sep, raw = token.partition("=")
    if not sep or not key or not raw:
        raise UsageError(f"expected name=value, got {token!r}")
    return key.strip(), raw.strip()


def _coerce(func: _Function, key: str, raw: str):
    if key not in func.params:
        raise UsageError(f"unknown argument {key!r}; expected {', '.join(func.params)}")
    if key in _STRING_ARGS:
        if raw not in _STRING_ARGS[key]:
            raise UsageError(f"{key} must be one of {', '.join(_STRING_ARGS[key])}")
        return raw
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{key} must be a number, got {raw!r}") from None
    if key in func.integer:
        if int(value) != value:
            raise UsageError(f"{key} must be an integer")
        return int(value)
    return value


def _complete(func: _Function, args: dict) -> dict:
    full = {**func.defaults, **args}
    missing = [p for p in func.params if p not in full and p not in _STRING_ARGS]
    if missing:
        raise UsageError(f"missing required argument(s): {', '.join(missing)}")
    return {p: full[p] for p in func.params if p in full}


def _evaluate(func: _Function, args: dict, cfg: CliConfig) -> tuple[IntegralResult, str]:
    res, path = func.evaluate(args, cfg)
    if not res.converged or not math.isfinite(res.value):
        raise EvaluationError(f"evaluation did not converge (estimate "
                              f"{format_float(res.value, HUMAN_DIGITS)}, error "
                              f"{format_float(res.error_estimate, HUMAN_DIGITS)})")
    return res, path


# ---------------------------------------------------------------------------
# output helpers

def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _machine(value) -> object:
    # 17 significant digits survive a float round trip; json.dumps(float) uses repr
    if isinstance(value, float):
        return float(format_float(value, MACHINE_DIGITS)) if math.isfinite(value) else None
    return value


def _args_text(args: dict) -> str:
    return ", ".join(f"{k}={format_float(v, HUMAN_DIGITS) if isinstance(v, float) else v}"
                     for k, v in args.items())


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval(ns: argparse.Namespace) -> int:
    func = _lookup(ns.function)
    args = {}
    for token in ns.args:
        key, raw = _split_assignment(token)
        args[key] = _coerce(func, key, raw)
    args = _complete(func, args)
    tol = resolve_tol(ns.tol)
    cfg = CliConfig(abs_tol=tol, rel_tol=tol, output_format=ns.format)
    res, path = _evaluate(func, args, cfg)
    if cfg.output_format == "json":
        body = {"function": ns.function, "args": {k: _machine(v) for k, v in args.items()},
                "value": _machine(res.value), "error_estimate": _machine(res.error_estimate),
                "path": path, "evaluations": res.evaluations}
        sys.stdout.write(json.dumps(body) + "\n")
    elif cfg.output_format == "csv":
        sys.stdout.write("function,value,error_estimate,path,evaluations\n")
        sys.stdout.write(f"{ns.function},{format_float(res.value, MACHINE_DIGITS)},"
                         f"{format_float(res.error_estimate, MACHINE_DIGITS)},{path},"
                         f"{res.evaluations}\n")
    else:
        sys.stdout.write(f"{ns.function}({_args_text(args)}) = "
                         f"{format_float(res.value, HUMAN_DIGITS)}\n"
                         f"error estimate: {format_float(res.error_estimate, HUMAN_DIGITS)}\n"
                         f"path: {path} ({res.evaluations} "
                         f"evaluation{'' if res.evaluations == 1 else 's'})\n")
    return EXIT_OK


def _parse_grid(tokens: Sequence[str]) -> dict[str, tuple[float, ...]]:
    grid = {}
    for token in tokens or ():
        key, raw = _split_assignment(token)
        try:
            grid[key] = tuple(float(v) for v in raw.split(",") if v.strip())
        except ValueError:
            raise UsageError(f"grid values for {key} must be numbers") from None
    return grid


def _grid(ns: argparse.Namespace) -> GridSpec:
    extra = {"seed": ns.seed}
    if ns.samples is not None:
        extra["sample_count"] = ns.samples
    try:
        return GridSpec.from_mapping(_parse_grid(getattr(ns, "grid", None)), **extra)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None


def _verifier_tol(flag: Optional[float]) -> float:
    tol = resolve_tol(flag)
    return DEFAULT_TOL if tol is None else tol


def _report_text(report, anchor: str, description: str) -> str:
    lines = [f"check: {report.check_id} ({anchor})",
             f"claim: {description}",
             f"samples: {report.samples}",
             f"worst margin: {format_float(report.worst_margin, HUMAN_DIGITS)}",
             f"verdict: {report.verdict.value}"]
    if report.violation_count:
        lines.append(f"violations: {report.violation_count} "
                     f"(showing {len(report.violations)})")
        for point, margin, err in report.violations:
            where = ", ".join(f"{k}={format_float(v, HUMAN_DIGITS) if isinstance(v, float) else v}"
                              for k, v in point.items())
            lines.append(f"  {where}: margin {format_float(margin, HUMAN_DIGITS)}"
                         + (f" [{err}]" if err else ""))
    if report.note and report.verdict is not Verdict.PASS_WITH_NOTE:
        lines.append(f"note: {report.note}")
    return "\n".join(lines) + "\n"


def cmd_check(ns: argparse.Namespace) -> int:
    try:
        info = get_check(ns.check_id)
    except LookupError:
        raise UsageError(f"unknown check id {ns.check_id!r}; see 'pkspecial list'") from None
    grid = _grid(ns)
    tol = _verifier_tol(ns.tol)
    try:
        report = run_check(ns.check_id, grid, tol)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None
    if report.verdict is Verdict.PASS_WITH_NOTE:
        # keep machine formats parseable on stdout
        banner = sys.stdout if ns.format == "text" else sys.stderr
        banner.write(f"NOTE: {report.note}\n")
    if ns.format == "json":
        sys.stdout.write(reports_to_json([report], summarize([report], tol, grid.seed)))
    elif ns.format == "csv":
        sys.stdout.write(reports_to_csv([report]))
    else:
        sys.stdout.write(_report_text(report, info.anchor, info.description))
    return EXIT_FAIL if report.verdict is Verdict.FAIL else EXIT_OK


def _infer_format(fmt: Optional[str], out: Optional[str]) -> str:
    if fmt is not None:
        return fmt
    if out is None:
        return "text"
    return "csv" if out.lower().endswith(".csv") else "json"


def cmd_verify_all(ns: argparse.Namespace) -> int:
    fmt = _infer_format(ns.format, ns.out)
    cfg = CliConfig(output_format=fmt, output_path=ns.out, seed=ns.seed)
    if ns.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    grid = _grid(ns)
    tol = _verifier_tol(ns.tol)
    reports, summary = run_all(grid, tol=tol, jobs=ns.jobs)
    rendered = {"json": lambda: reports_to_json(reports, summary),
                "csv": lambda: reports_to_csv(reports),
                "text": lambda: reports_to_text(reports, summary)}[cfg.output_format]()
    _emit(rendered, cfg.output_path)
    if cfg.output_path is not None:
        sys.stdout.write(reports_to_text(reports, summary))
    return EXIT_FAIL if summary["FAIL"] else EXIT_OK


def parse_range(spec: str) -> np.ndarray:
    """``start:stop:count`` with inclusive endpoints, ``start < stop``, ``count >= 2``."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be start:stop:count, got {spec!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise UsageError(f"malformed range {spec!r}") from None
    if not (math.isfinite(start) and math.isfinite(stop) and start < stop):
        raise UsageError(f"range needs finite start < stop, got {spec!r}")
    if count < 2:
        raise UsageError(f"range count must be >= 2, got {count}")
    return np.linspace(start, stop, count)


def cmd_sweep(ns: argparse.Namespace) -> int:
    func = _lookup(ns.function)
    varying, values, fixed = None, None, {}
    for token in ns.args:
        key, raw = _split_assignment(token)
        if ":" in raw:
            if varying is not None:
                raise UsageError("exactly one argument may be a range")
            if key not in func.params or key in _STRING_ARGS:
                raise UsageError(f"cannot sweep {key!r} for {ns.function}")
            varying, values = key, parse_range(raw)
        else:
            fixed[key] = _coerce(func, key, raw)
    if varying is None:
        raise UsageError("one argument must be a range start:stop:count")
    if varying in func.integer and not np.all(values == np.round(values)):
        raise UsageError(f"range for {varying} must hit integers only")
    tol = resolve_tol(ns.tol)
    cfg = CliConfig(abs_tol=tol, rel_tol=tol, output_format=ns.format, output_path=ns.out)
    rows = []
    for value in values:
        point = float(value) if varying not in func.integer else int(round(value))
        args = _complete(func, {**fixed, varying: point})
        res, _ = _evaluate(func, args, cfg)
        rows.append((float(value), res.value))
    if cfg.output_format == "json":
        body = {"function": ns.function, "parameter": varying,
                "fixed": {k: _machine(v) for k, v in fixed.items()},
                "rows": [{varying: _machine(a), "value": _machine(b)} for a, b in rows]}
        text = json.dumps(body) + "\n"
    elif cfg.output_format == "csv":
        text = f"{varying},value\n" + "".join(
            f"{format_float(a, MACHINE_DIGITS)},{format_float(b, MACHINE_DIGITS)}\n"
            for a, b in rows)
    else:
        text = f"{varying:>17}  value\n" + "".join(
            f"{format_float(a, HUMAN_DIGITS):>17}  {format_float(b, HUMAN_DIGITS)}\n"
            for a, b in rows)
    _emit(text, cfg.output_path)
    return EXIT_OK


def cmd_list(ns: argparse.Namespace) -> int:
    from .verifier import list_checks
    entries = list_checks()
    width = max(len(cid) for cid, _, _ in entries)
    for cid, anchor, description in entries:
        sys.stdout.write(f"{cid:<{width}}  {anchor:<16}  {description}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pkspecial", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tol_flag(p):
        p.add_argument("--tol", type=float, default=None,
                       help=f"tolerance (overrides ${TOL_ENV})")

    def grid_flags(p):
        p.add_argument("--seed", type=int, default=42, help="seed for randomized samples")
        p.add_argument("--samples", type=int, default=None,
                       help="random sample count per randomized check")

    p = sub.add_parser("eval", help="evaluate one function")
    p.add_argument("function", help=", ".join(sorted(FUNCTIONS)))
    p.add_argument("args", nargs="*", metavar="name=value")
    tol_flag(p)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("check", help="run one registered check")
    p.add_argument("check_id")
    p.add_argument("--grid", nargs="+", action="extend", metavar="name=v1,v2",
                   help="override a grid parameter list")
    tol_flag(p)
    grid_flags(p)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("verify-all", help="run every registered check")
    p.add_argument("--format", choices=FORMATS, default=None,
                   help="report format (default: text, or inferred from --out)")
    p.add_argument("--out", default=None, help="write the report here")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    tol_flag(p)
    grid_flags(p)
    p.set_defaults(handler=cmd_verify_all)

    p = sub.add_parser("sweep", help="tabulate a function over a parameter range")
    p.add_argument("function")
    p.add_argument("args", nargs="+", metavar="name=value|name=start:stop:count")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--out", default=None)
    tol_flag(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("list", help="list registered checks")
    p.set_defaults(handler=cmd_list)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    try:
        ns = build_parser().parse_args(argv)
        return ns.handler(ns)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ArgumentError, EvaluationError, CapacityError) as exc:
        code = EXIT_USAGE if isinstance(exc, ArgumentError) else EXIT_DOMAIN
        label = "usage error" if code == EXIT_USAGE else "evaluation error"
        print(f"{label}: {exc}", file=sys.stderr)
        return code
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
