"""Check registry, grids, reports and serialization."""
from __future__ import annotations

import enum
import io
import json
import math
import random
import zlib
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping, Optional, Sequence

from ..errors import ArgumentError, PKSpecialError

__all__ = [
    "Verdict",
    "GridSpec",
    "CheckReport",
    "CheckContext",
    "CheckInfo",
    "TOL_STRICT",
    "DEFAULT_TOL",
    "register",
    "get_check",
    "list_checks",
    "run_check",
    "run_all",
    "summarize",
    "reports_to_json",
    "reports_to_csv",
    "reports_to_text",
    "format_float",
]

DEFAULT_TOL = 1e-9
TOL_STRICT = 1e-12
_MAX_STORED_VIOLATIONS = 25


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PASS_WITH_NOTE = "PASS_WITH_NOTE"


# ---------------------------------------------------------------------------
# grids

_GRID_FIELDS = ("x", "y", "z", "a", "p", "k", "c", "b", "u", "v", "n", "m", "N")


@dataclass(frozen=True)
class GridSpec:
    """Per-parameter value lists overriding each check's defaults.

    A field left as ``None`` means "use the check's default list".
    ``sample_count`` and ``seed`` drive the randomized checks.
    """

    x: Optional[tuple[float, ...]] = None
    y: Optional[tuple[float, ...]] = None
    z: Optional[tuple[float, ...]] = None
    a: Optional[tuple[float, ...]] = None
    p: Optional[tuple[float, ...]] = None
    k: Optional[tuple[float, ...]] = None
    c: Optional[tuple[float, ...]] = None
    b: Optional[tuple[float, ...]] = None
    u: Optional[tuple[float, ...]] = None
    v: Optional[tuple[float, ...]] = None
    n: Optional[tuple[float, ...]] = None
    m: Optional[tuple[float, ...]] = None
    N: Optional[tuple[float, ...]] = None
    sample_count: int = 50
    seed: int = 42

    def __post_init__(self) -> None:
        for name in _GRID_FIELDS:
            values = getattr(self, name)
            if values is None:
                continue
            values = tuple(float(v) for v in values)
            if not values:
                values = None
            elif not all(math.isfinite(v) for v in values):
                raise ArgumentError(f"grid values for {name} must be finite")
            object.__setattr__(self, name, values)
        if int(self.sample_count) != self.sample_count or self.sample_count < 1:
            raise ArgumentError("sample_count must be a positive integer")
        if int(self.seed) != self.seed:
            raise ArgumentError("seed must be an integer")

    @classmethod
    def from_mapping(cls, overrides: Optional[Mapping[str, Iterable[float]]] = None,
                     **kwargs) -> "GridSpec":
        """Build from ``{"p": [1, 2], ...}``; unknown keys raise ArgumentError."""
        values = {}
        for key, vals in (overrides or {}).items():
            if key not in _GRID_FIELDS:
                raise ArgumentError(f"unknown grid parameter {key!r}")
            values[key] = tuple(vals)
        return cls(**values, **kwargs)

    def get(self, name: str, default: Sequence[float]) -> tuple[float, ...]:
        if name not in _GRID_FIELDS:
            raise ArgumentError(f"unknown grid parameter {name!r}")
        value = getattr(self, name)
        return tuple(default) if value is None else value

    def ints(self, name: str, default: Sequence[int]) -> tuple[int, ...]:
        """Integer-valued parameter (derivative orders, sizes)."""
        out = []
        for v in self.get(name, default):
            if int(v) != v:
                raise ArgumentError(f"grid values for {name} must be integers")
            out.append(int(v))
        return tuple(out)

    def overrides(self) -> dict[str, tuple[float, ...]]:
        return {k: getattr(self, k) for k in _GRID_FIELDS if getattr(self, k) is not None}


# ---------------------------------------------------------------------------
# reports

@dataclass
class CheckReport:
    """Outcome of one check over its grid.

    ``verdict`` is FAIL exactly when ``violations`` is non-empty; a passing
    check that records a discrepancy in a displayed form carries
    PASS_WITH_NOTE and explains it in ``note``.
    """

    check_id: str
    samples: int
    worst_margin: float
    violations: list
    verdict: Verdict
    note: str = ""
    violation_count: int = 0

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "samples": self.samples,
            "worst_margin": self.worst_margin,
            "verdict": self.verdict.value,
            "violation_count": self.violation_count,
            "violations": [{"point": dict(pt), "margin": mg, **({"error": err} if err else {})}
                           for pt, mg, err in self.violations],
            "note": self.note,
        }


class CheckContext:
    """Collects margins for one check run.

    Checks call :meth:`record` once per sample.  A margin below ``-tol``
    (or, for strict predicates, not above :data:`TOL_STRICT`) is a
    violation.  :meth:`attempt` wraps a sample so that evaluation errors
    are recorded as violations instead of aborting the check.
    """

    def __init__(self, check_id: str, grid: GridSpec, tol: float):
        self.check_id = check_id
        self.grid = grid
        self.tol = tol
        self.rng = random.Random(grid.seed ^ zlib.crc32(check_id.encode()))
        self.samples = 0
        self.worst = math.inf
        self.violations: list = []
        self.violation_count = 0
        self.notes: list[str] = []
        self.infos: list[str] = []

    def _violate(self, point, margin, error=None) -> None:
        self.violation_count += 1
        if len(self.violations) < _MAX_STORED_VIOLATIONS:
            self.violations.append((_clean_point(point), margin, error))

    def record(self, point: Mapping, margin: float, strict: bool = False) -> bool:
        """Record one sample; returns True when it satisfied the predicate."""
        margin = float(margin)
        self.samples += 1
        if not math.isfinite(margin):
            self.worst = -math.inf
            self._violate(point, margin, "non-finite margin")
            return False
        self.worst = min(self.worst, margin)
        ok = margin > TOL_STRICT if strict else margin >= -self.tol
        if not ok:
            self._violate(point, margin)
        return ok

    def error(self, point: Mapping, exc: BaseException) -> None:
        self.samples += 1
        self.worst = -math.inf
        self._violate(point, -math.inf, f"{type(exc).__name__}: {exc}")

    def attempt(self, point: Mapping, fn: Callable[[], object]):
        """Run ``fn``; record a per-point error and return None if it raises."""
        try:
            return fn()
        except (PKSpecialError, ArithmeticError, ValueError) as exc:
            self.error(point, exc)
            return None

    def note(self, text: str) -> None:
        """Record a discrepancy in a displayed form; the verdict becomes
        PASS_WITH_NOTE unless there are violations."""
        if text not in self.notes:
            self.notes.append(text)

    def info(self, text: str) -> None:
        """Informational remark that leaves the verdict unchanged."""
        if text not in self.infos:
            self.infos.append(text)

    def report(self) -> CheckReport:
        if self.violation_count:
            verdict = Verdict.FAIL
        elif self.notes:
            verdict = Verdict.PASS_WITH_NOTE
        else:
            verdict = Verdict.PASS
        worst = self.worst if self.samples else math.nan
        return CheckReport(self.check_id, self.samples, worst, list(self.violations),
                           verdict, " ".join(self.notes + self.infos), self.violation_count)


def _clean_point(point: Mapping) -> dict:
    out = {}
    for key, value in point.items():
        if isinstance(value, (list, tuple)):
            out[key] = [float(v) if isinstance(v, float) else v for v in value]
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class CheckInfo:
    check_id: str
    anchor: str
    description: str
    func: Callable[[CheckContext], None] = field(compare=False, repr=False)


_REGISTRY: dict[str, CheckInfo] = {}


def register(check_id: str, anchor: str, description: str):
    """Decorator adding a check function to the registry."""

    def deco(func: Callable[[CheckContext], None]):
        if check_id in _REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        _REGISTRY[check_id] = CheckInfo(check_id, anchor, description, func)
        return func

    return deco


def _ensure_loaded() -> None:
    from . import checks_beta, checks_chain, checks_cz, checks_gamma  # noqa: F401


def get_check(check_id: str) -> CheckInfo:
    _ensure_loaded()
    try:
        return _REGISTRY[check_id]
    except KeyError:
        raise LookupError(f"unknown check id {check_id!r}") from None


def list_checks() -> list[tuple[str, str, str]]:
    """``(check_id, anchor, description)`` for every registered check, sorted by id."""
    _ensure_loaded()
    return [(c.check_id, c.anchor, c.description)
            for c in sorted(_REGISTRY.values(), key=lambda c: c.check_id)]


def run_check(check_id: str, grid: Optional[GridSpec] = None,
              tol: float = DEFAULT_TOL) -> CheckReport:
    """Evaluate one check over its grid.

    Raises
    ------
    LookupError
        Unknown ``check_id``.
    ArgumentError
        Non-positive tolerance or malformed grid.
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise ArgumentError("tol must be positive and finite")
    info = get_check(check_id)
    ctx = CheckContext(check_id, grid or GridSpec(), tol)
    info.func(ctx)
    return ctx.report()


def _run_one(args: tuple[str, GridSpec, float]) -> CheckReport:
    return run_check(*args)


def run_all(grid_overrides: Optional[GridSpec | Mapping] = None, tol: float = DEFAULT_TOL,
            jobs: int = 1, check_ids: Optional[Sequence[str]] = None
            ) -> tuple[list[CheckReport], dict]:
    """Run every registered check in id order.

    Parameters
    ----------
    grid_overrides : GridSpec or mapping, optional
        Applied to every check.
    jobs : int
        Worker processes; results are reassembled in id order either way.

    Returns
    -------
    reports, summary
    """
    if isinstance(grid_overrides, GridSpec):
        grid = grid_overrides
    else:
        grid = GridSpec.from_mapping(grid_overrides or {})
    ids = list(check_ids) if check_ids is not None else [c[0] for c in list_checks()]
    work = [(cid, grid, tol) for cid in ids]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, work))
    else:
        reports = [_run_one(w) for w in work]
    return reports, summarize(reports, tol, grid.seed)


def summarize(reports: Sequence[CheckReport], tol: float, seed: int) -> dict:
    counts = {v.value: 0 for v in Verdict}
    for r in reports:
        counts[r.verdict.value] += 1
    return {"checks": len(reports), "PASS": counts["PASS"],
            "PASS_WITH_NOTE": counts["PASS_WITH_NOTE"], "FAIL": counts["FAIL"],
            "tol": tol, "seed": seed}


# ---------------------------------------------------------------------------
# serialization

def format_float(value: float, digits: int = 17) -> str:
    """``%.{digits}g`` with ``nan``/``inf`` spelled out."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def _json(obj) -> str:
    # floats as %.17g for exact round trip; non-finite values become null
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, enum.Enum):
        return _json(obj.value)
    if isinstance(obj, Mapping):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if hasattr(obj, "__float__"):
        return _json(float(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def reports_to_json(reports: Sequence[CheckReport], summary: Mapping) -> str:
    body = {"summary": dict(summary), "checks": [r.to_dict() for r in reports]}
    return _json(body) + "\n"


def reports_to_csv(reports: Sequence[CheckReport]) -> str:
    buf = io.StringIO()
    buf.write("check_id,samples,worst_margin,verdict\n")
    for r in reports:
        buf.write(f"{r.check_id},{r.samples},{format_float(r.worst_margin)},{r.verdict.value}\n")
    return buf.getvalue()


def reports_to_text(reports: Sequence[CheckReport], summary: Mapping) -> str:
    width = max((len(r.check_id) for r in reports), default=8)
    lines = [f"{'check':<{width}}  {'samples':>7}  {'worst_margin':>17}  verdict"]
    for r in reports:
        lines.append(f"{r.check_id:<{width}}  {r.samples:>7}  "
                     f"{format_float(r.worst_margin, 10):>17}  {r.verdict.value}")
    lines.append(f"summary: {summary['checks']} checks, {summary['PASS']} PASS, "
                 f"{summary['PASS_WITH_NOTE']} PASS_WITH_NOTE, {summary['FAIL']} FAIL")
    return "\n".join(lines) + "\n"


def with_sample_count(grid: GridSpec, count: int) -> GridSpec:
    return replace(grid, sample_count=count)
