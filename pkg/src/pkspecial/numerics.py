"""Quadrature, series summation and finite-difference primitives.

Everything here works in double precision.  Integrals use an adaptive
Gauss-Kronrod (7, 15) rule with global bisection; endpoint power
singularities are removed by a change of variables before refinement and
infinite ranges are folded onto finite ones.  Series of positive,
completely monotone terms are summed with an Euler-Maclaurin corrected
tail whose error is bounded rigorously.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ArgumentError, DomainError, EvaluationError

__all__ = [
    "QuadratureSettings",
    "SeriesSettings",
    "IntegralResult",
    "integrate_finite",
    "integrate_upper",
    "integrate_semi_infinite",
    "sum_paired_series",
    "log_gamma_classic",
    "finite_difference",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.57721566490153286060651209008240243

# Gauss-Kronrod (7, 15) abscissae and weights on [-1, 1].  Only the
# non-negative half is stored; the rule is symmetric.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7].
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-point node set on [-1, 1] and the matching weight vectors.
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[[1, 3, 5]] = _WG[:3]
_GAUSS_W[7] = _WG[3]
_GAUSS_W[[9, 11, 13]] = _WG[2::-1]

_EPS = np.finfo(float).eps
_STAGNATION_WINDOW = 256
_TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and budget for adaptive quadrature.

    Attributes
    ----------
    abs_tol, rel_tol : float
        Target error is ``max(abs_tol, rel_tol * |value|)``.
    max_subdivisions : int
        Maximum number of bisections before giving up with
        ``converged=False``.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ArgumentError("abs_tol must be a positive finite number")
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise ArgumentError("rel_tol must be a positive finite number")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ArgumentError("max_subdivisions must be a positive integer")

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def scaled(self, factor: float) -> "QuadratureSettings":
        """Copy with both tolerances multiplied by ``factor``."""
        return QuadratureSettings(self.abs_tol * factor, self.rel_tol * factor,
                                  self.max_subdivisions)


@dataclass(frozen=True)
class SeriesSettings:
    """Stopping rule for :func:`sum_paired_series`."""

    abs_tol: float = 1e-14
    max_terms: int = 10_000_000

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and math.isfinite(self.abs_tol)):
            raise ArgumentError("abs_tol must be a positive finite number")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ArgumentError("max_terms must be a positive integer")


@dataclass(frozen=True)
class IntegralResult:
    """Outcome of a quadrature or series evaluation."""

    value: float
    error_estimate: float
    converged: bool
    evaluations: int

    def __float__(self) -> float:
        return self.value

    def combine(self, other: "IntegralResult", sign: float = 1.0) -> "IntegralResult":
        """Sum (or difference, with ``sign=-1``) of two independent results."""
        return IntegralResult(self.value + sign * other.value,
                              self.error_estimate + other.error_estimate,
                              self.converged and other.converged,
                              self.evaluations + other.evaluations)

    def scale(self, factor: float) -> "IntegralResult":
        return IntegralResult(self.value * factor, self.error_estimate * abs(factor),
                              self.converged, self.evaluations)


# ---------------------------------------------------------------------------
# integrand plumbing

class _Integrand:
    """Evaluate ``f`` on a node array, vectorized when ``f`` allows it."""

    def __init__(self, f: Callable):
        self.f = f
        self.vectorized: Optional[bool] = None

    def __call__(self, t: np.ndarray) -> np.ndarray:
        if self.vectorized is not False:
            try:
                with np.errstate(all="ignore"):
                    y = np.asarray(self.f(t), dtype=float)
                if y.shape == t.shape:
                    self.vectorized = True
                    return y
                if y.ndim == 0 and self.vectorized is None:
                    # a constant integrand ignores its argument
                    probe = np.asarray(self.f(t[:1]), dtype=float)
                    if probe.ndim == 0:
                        self.vectorized = True
                        return np.full(t.shape, float(y))
            except (TypeError, ValueError):
                if self.vectorized:
                    raise
            self.vectorized = False
        with np.errstate(all="ignore"):
            return np.array([float(self.f(float(v))) for v in t])


def _check_finite(values: np.ndarray, abscissae: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        i = int(np.argmin(np.isfinite(values)))
        t = float(abscissae[i])
        raise EvaluationError(f"integrand is not finite at t={t!r}", abscissa=t)


def _gk15_batch(g: Callable[[np.ndarray], np.ndarray], lows: np.ndarray,
                highs: np.ndarray):
    """Apply the (7, 15) rule to several intervals with one integrand call."""
    centre = 0.5 * (lows + highs)
    half = 0.5 * (highs - lows)
    nodes = centre[:, None] + half[:, None] * _NODES[None, :]
    values = g(nodes.ravel()).reshape(nodes.shape)
    kron = half * (values @ _KRONROD_W)
    gauss = half * (values @ _GAUSS_W)
    mean = 0.5 * (values @ _KRONROD_W)
    resabs = np.abs(half) * (np.abs(values) @ _KRONROD_W)
    resasc = np.abs(half) * (np.abs(values - mean[:, None]) @ _KRONROD_W)
    err = np.abs(kron - gauss)
    with np.errstate(all="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc > 0) & (err > 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _TINY / (50.0 * _EPS), np.maximum(err, floor), err)
    return kron, err


def _adaptive(g: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
              settings: QuadratureSettings) -> IntegralResult:
    vals, errs = _gk15_batch(g, np.array([lo]), np.array([hi]))
    evaluations = 15
    heap = [(-float(errs[0]), lo, hi, float(vals[0]))]
    total_err = float(errs[0])
    total = float(vals[0])
    converged = total_err <= settings.target(total)
    subdivisions = 0
    checkpoint = total_err
    while not converged and subdivisions < settings.max_subdivisions:
        neg_err, a, b, v = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            heapq.heappush(heap, (neg_err, a, b, v))
            break
        kv, ke = _gk15_batch(g, np.array([a, mid]), np.array([mid, b]))
        evaluations += 30
        subdivisions += 1
        heapq.heappush(heap, (-float(ke[0]), a, mid, float(kv[0])))
        heapq.heappush(heap, (-float(ke[1]), mid, b, float(kv[1])))
        total += float(kv[0] + kv[1]) - v
        total_err += float(ke[0] + ke[1]) + neg_err
        if subdivisions % 64 == 0:
            # refresh running sums to stop drift
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(-item[0] for item in heap)
        converged = total_err <= settings.target(total)
        if subdivisions % _STAGNATION_WINDOW == 0:
            # a divergent integral keeps the error estimate flat
            if total_err > 0.9 * checkpoint:
                break
            checkpoint = total_err
    total = math.fsum(item[3] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    converged = total_err <= settings.target(total)
    return IntegralResult(total, total_err, converged, evaluations)


def _validate_alpha(alpha: Optional[float]) -> Optional[float]:
    if alpha is None:
        return None
    if not (0.0 < alpha <= 1.0):
        raise ArgumentError("singular_exponent must satisfy 0 < alpha <= 1")
    return None if alpha == 1.0 else float(alpha)


def integrate_finite(f: Callable, a: float, b: float,
                     singular_exponent: Optional[float] = None,
                     settings: Optional[QuadratureSettings] = None) -> IntegralResult:
    """Adaptive quadrature of ``f`` over ``[a, b]``.

    Parameters
    ----------
    f : callable
        Integrand.  Called with a numpy array when it accepts one, otherwise
        point by point.  The endpoint ``a`` itself is never evaluated.
    a, b : float
        Finite limits with ``a < b``.
    singular_exponent : float, optional
        ``alpha`` in ``(0, 1]`` such that ``f(t) * (t - a)**(1 - alpha)`` is
        bounded near ``a``.  The substitution ``t - a = u**(1/alpha)`` turns the
        singular factor into a bounded one before refinement.
    settings : QuadratureSettings, optional

    Returns
    -------
    IntegralResult
        ``converged`` is False when the subdivision budget ran out.

    Raises
    ------
    ArgumentError
        Empty, reversed or non-finite interval.
    EvaluationError
        ``f`` returned a non-finite value; ``abscissa`` holds the node.
    """
    settings = settings or QuadratureSettings()
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ArgumentError(f"invalid interval [{a!r}, {b!r}]")
    alpha = _validate_alpha(singular_exponent)
    fv = _Integrand(f)
    if alpha is None:
        def g(t: np.ndarray) -> np.ndarray:
            y = fv(t)
            _check_finite(y, t)
            return y
        return _adaptive(g, a, b, settings)

    inv = 1.0 / alpha

    def g_sub(u: np.ndarray) -> np.ndarray:
        t = a + u ** inv
        y = fv(t)
        _check_finite(y, t)
        with np.errstate(all="ignore"):
            out = y * (inv * u ** (inv - 1.0))
        _check_finite(out, t)
        return out

    return _adaptive(g_sub, 0.0, (b - a) ** alpha, settings)


def integrate_upper(f: Callable, a: float, settings: Optional[QuadratureSettings] = None,
                    scale: float = 1.0) -> IntegralResult:
    """Integral of ``f`` over ``[a, inf)`` through ``t = a - s + s/u``, ``u`` in ``(0, 1]``.

    The fold keeps power-law and exponential tails smooth near ``u = 0``;
    ``scale`` (``s``) should match the width of the region where ``f`` is
    non-negligible beyond ``a``.
    """
    settings = settings or QuadratureSettings()
    a = float(a)
    if not math.isfinite(a):
        raise ArgumentError("lower limit must be finite")
    if not (scale > 0 and math.isfinite(scale)):
        raise ArgumentError("scale must be positive and finite")
    fv = _Integrand(f)
    s = float(scale)

    def g(u: np.ndarray) -> np.ndarray:
        with np.errstate(all="ignore"):
            t = a - s + s / u
        y = fv(t)
        _check_finite(y, t)
        with np.errstate(all="ignore"):
            out = y * (s / (u * u))
        # far-tail nodes where f has already underflowed
        out = np.where(y == 0.0, 0.0, out)
        _check_finite(out, t)
        return out

    return _adaptive(g, 0.0, 1.0, settings)


def integrate_semi_infinite(f: Callable, singular_exponent: Optional[float] = None,
                            settings: Optional[QuadratureSettings] = None,
                            scale: float = 1.0) -> IntegralResult:
    """Adaptive quadrature of ``f`` over ``(0, inf)``.

    The range is split at ``scale``.  The head ``(0, scale]`` goes to
    :func:`integrate_finite` (with the singularity substitution when
    ``singular_exponent`` is given) and the tail to :func:`integrate_upper`.
    Each part is given half the absolute tolerance.  A divergent integral
    shows up as an error estimate that never shrinks, which exhausts the
    budget and yields ``converged=False``.
    """
    settings = settings or QuadratureSettings()
    if not (scale > 0 and math.isfinite(scale)):
        raise ArgumentError("scale must be positive and finite")
    half = QuadratureSettings(0.5 * settings.abs_tol, settings.rel_tol,
                              settings.max_subdivisions)
    head = integrate_finite(f, 0.0, scale, singular_exponent, half)
    tail = integrate_upper(f, scale, half, scale)
    return head.combine(tail)


# ---------------------------------------------------------------------------
# series

def _python_partial(term: Callable[[float], float]) -> Callable[[int, int], float]:
    def partial(start: int, stop: int) -> float:
        return math.fsum(term(n) for n in range(start, stop))
    return partial


def _numeric_tail(term: Callable[[float], float]) -> Callable[[int], float]:
    def tail(n0: int) -> float:
        res = integrate_upper(term, float(n0), QuadratureSettings(1e-17, 1e-13),
                              scale=max(1.0, float(n0)))
        return res.value
    return tail


def sum_paired_series(term: Callable[[float], float],
                      settings: Optional[SeriesSettings] = None, *,
                      tail: Optional[Callable[[int], float]] = None,
                      partial: Optional[Callable[[int, int], float]] = None,
                      start_terms: int = 16) -> IntegralResult:
    """Sum ``term(0) + term(1) + ...`` for a positive, completely monotone term.

    The remainder after ``N`` terms is approximated by the trapezoidal
    correction ``integral_N^inf term + term(N)/2``.  For completely monotone
    terms the exact remainder exceeds this by an amount in ``[0, U]`` with
    ``U = -term'(N)/12``; ``U`` is bounded above by backward differences,
    ``U <= (D1 + D2)/12`` where ``D1 = term(N-1) - term(N)`` and
    ``D2 = term(N-2) - 2 term(N-1) + term(N)``.  The estimate adds ``U/2``
    and reports ``U/2`` as its error bound.  ``N`` grows geometrically until
    the bound falls below ``settings.abs_tol``.

    Parameters
    ----------
    term : callable
        The term as a function of a real index ``n >= 0``.
    settings : SeriesSettings, optional
    tail : callable, optional
        ``tail(N)`` returns ``integral_N^inf term(t) dt`` in closed form.
        Defaults to adaptive quadrature of ``term``.
    partial : callable, optional
        ``partial(start, stop)`` returns ``term(start) + ... + term(stop-1)``;
        lets callers plug in a compiled kernel.
    start_terms : int
        Initial truncation length (at least 3).

    Returns
    -------
    IntegralResult
        ``evaluations`` counts summed terms; ``converged`` is False when
        ``max_terms`` was reached first.
    """
    settings = settings or SeriesSettings()
    partial = partial or _python_partial(term)
    tail = tail or _numeric_tail(term)
    n_terms = max(3, int(start_terms))
    n_terms = min(n_terms, max(3, settings.max_terms))
    head = partial(0, n_terms)
    while True:
        f2, f1, f0 = (float(term(n_terms - 2)), float(term(n_terms - 1)),
                      float(term(n_terms)))
        if min(f0, f1, f2) < 0:
            raise ArgumentError("series terms must be non-negative")
        bound = (abs(f1 - f0) + abs(f2 - 2.0 * f1 + f0)) / 12.0
        half = 0.5 * bound
        if half <= settings.abs_tol or n_terms >= settings.max_terms:
            break
        # the bound decays at least like N**-3; aim just past the target
        factor = 1.25 * (half / settings.abs_tol) ** (1.0 / 3.0)
        grown = min(int(n_terms * min(max(factor, 2.0), 16.0)), settings.max_terms)
        head += partial(n_terms, grown)
        n_terms = grown
    value = head + float(tail(n_terms)) + 0.5 * f0 + 0.5 * bound
    if not math.isfinite(value):
        raise EvaluationError("series sum is not finite")
    converged = half <= settings.abs_tol
    # allowance for rounding in the partial sum and the terms themselves
    half += 16.0 * _EPS * abs(value)
    return IntegralResult(value, half, converged, n_terms)


# ---------------------------------------------------------------------------
# log gamma

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma_classic(x: float) -> float:
    """``ln Gamma(x)`` for ``x > 0`` by the Lanczos (g=7, n=9) approximation.

    Arguments below 1/2 go through the reflection formula.  The absolute
    error is below ``1e-13 * max(1, |ln Gamma(x)|)``.

    Raises
    ------
    DomainError
        If ``x <= 0`` or ``x`` is not finite.
    """
    x = float(x)
    if not (x > 0.0) or not math.isfinite(x):
        raise DomainError("x must be > 0")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma_classic(1.0 - x)
    z = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


# ---------------------------------------------------------------------------
# finite differences

# central stencils: offsets and weights, divided by h**order
_STENCILS: dict[int, tuple[Sequence[int], Sequence[float], float]] = {
    1: ((-1, 1), (-1.0, 1.0), 2.0),
    2: ((-1, 0, 1), (1.0, -2.0, 1.0), 1.0),
    3: ((-2, -1, 1, 2), (-1.0, 2.0, -2.0, 1.0), 2.0),
    4: ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0), 1.0),
}


def finite_difference(f: Callable[[float], float], x: float, order: int, h: float,
                      domain: tuple[float, float] = (-math.inf, math.inf)) -> float:
    """Central-difference estimate of the ``order``-th derivative of ``f`` at ``x``.

    The truncation error is ``O(h**2)``.  ``domain`` is the open interval on
    which ``f`` is defined; a stencil reaching outside it, or ``f`` raising a
    domain error at a stencil point, is an argument error.
    """
    if order not in _STENCILS:
        raise ArgumentError("order must be an integer in 1..4")
    if not (h > 0 and math.isfinite(h)):
        raise ArgumentError("h must be positive and finite")
    offsets, weights, denom = _STENCILS[order]
    lo, hi = domain
    reach = max(abs(o) for o in offsets) * h
    if not (lo < x - reach and x + reach < hi):
        raise ArgumentError("finite-difference stencil leaves the domain")
    try:
        samples = [float(f(x + o * h)) for o in offsets]
    except DomainError as exc:
        raise ArgumentError("finite-difference stencil leaves the domain") from exc
    return math.fsum(w * s for w, s in zip(weights, samples)) / (denom * h ** order)
