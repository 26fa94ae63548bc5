"""The p-k Nielsen beta function and its derivatives.

``pk_beta(x) = (p/k) * integral_0^1 t**(x/k - 1) / (1 + t) dt``, which equals
``(p/k) * beta(x/k)`` with the classic Nielsen beta.  Four equivalent
representations are available; the paired all-positive series is the
default because its tail is bounded rigorously.
"""
from __future__ import annotations

import enum
import math
from typing import Optional

import numpy as np

from . import kernels
from .errors import ConsistencyError, DomainError, EvaluationError, UnsupportedOrderError
from .numerics import (
    IntegralResult,
    QuadratureSettings,
    SeriesSettings,
    integrate_finite,
    integrate_semi_infinite,
    sum_paired_series,
)
from .pk_gamma import PKParams, pk_digamma_result, pk_polygamma_result

__all__ = [
    "BetaRepresentation",
    "MAX_DERIVATIVE_ORDER",
    "pk_beta",
    "pk_beta_result",
    "pk_beta_deriv",
    "pk_beta_deriv_result",
    "pk_beta_abs",
    "classic_beta",
    "delta_n",
    "scaling_relation_check",
    "reflection_check",
    "power_weighted_derivative",
    "h_derivative",
]

MAX_DERIVATIVE_ORDER = 12


class BetaRepresentation(enum.Enum):
    """Evaluation path for :func:`pk_beta` and :func:`pk_beta_deriv`."""

    DIGAMMA_FORM = "digamma"
    PAIRED_SERIES = "series"
    SEMI_INFINITE_INTEGRAL = "semi_infinite"
    FINITE_INTEGRAL = "finite"


def _check_args(n: int, x: float) -> tuple[int, float]:
    if int(n) != n or n < 0:
        raise UnsupportedOrderError("derivative order must be a non-negative integer")
    if n > MAX_DERIVATIVE_ORDER:
        raise UnsupportedOrderError(f"derivative order must be <= {MAX_DERIVATIVE_ORDER}")
    x = float(x)
    if not (x > 0) or not math.isfinite(x):
        raise DomainError("x must be > 0")
    return int(n), x


def _series(n: int, x: float, params: PKParams,
            settings: Optional[SeriesSettings]) -> IntegralResult:
    # p (-1)^n n! sum_m [(2mk+x)^-(n+1) - (2mk+x+k)^-(n+1)]
    k = params.k
    s = n + 1.0

    def term(m):
        a = 2.0 * m * k + x
        return a ** -s * -math.expm1(-s * math.log1p(k / a))

    def tail(n_terms: int) -> float:
        a = 2.0 * n_terms * k + x
        if n == 0:
            return math.log1p(k / a) / (2.0 * k)
        return a ** (1.0 - s) * -math.expm1((1.0 - s) * math.log1p(k / a)) / (2.0 * k * (s - 1.0))

    def partial(start: int, stop: int) -> float:
        return kernels.paired_partial(s, x, k, start, stop)

    settings = settings or SeriesSettings()
    lead = term(0)
    local = SeriesSettings(settings.abs_tol * max(1.0, lead), settings.max_terms)
    res = sum_paired_series(term, local, tail=tail, partial=partial)
    return res.scale((-1.0) ** n * math.factorial(n) * params.p)


def _digamma_form(n: int, x: float, params: PKParams,
                  settings: Optional[SeriesSettings]) -> IntegralResult:
    k = params.k
    if n == 0:
        hi = pk_digamma_result((x + k) / 2.0, params, settings)
        lo = pk_digamma_result(x / 2.0, params, settings)
    else:
        hi = pk_polygamma_result(n, (x + k) / 2.0, params, settings)
        lo = pk_polygamma_result(n, x / 2.0, params, settings)
    return hi.combine(lo, -1.0).scale(params.p / 2.0 ** (n + 1))


def _semi_infinite(n: int, x: float, params: PKParams,
                   settings: Optional[QuadratureSettings]) -> IntegralResult:
    k = params.k
    rate = x / k

    def f(t):
        # t**n exp(-rate t) / (1 + exp(-t)), in log space
        return np.exp(n * np.log(t) - rate * t - np.log1p(np.exp(-t)))

    scale = (n + 1.0) / rate
    res = integrate_semi_infinite(f, None, settings, scale=scale)
    return res.scale((-1.0) ** n * params.p / k ** (n + 1))


def _finite(n: int, x: float, params: PKParams,
            settings: Optional[QuadratureSettings]) -> IntegralResult:
    k = params.k
    expo = x / k

    def f(t):
        lt = np.log(t)
        return np.exp((expo - 1.0) * lt) * lt ** n / (1.0 + t)

    res = integrate_finite(f, 0.0, 1.0, expo if expo < 1.0 else None, settings)
    return res.scale(params.p / k ** (n + 1))


def pk_beta_deriv_result(n: int, x: float, params: PKParams,
                         representation: BetaRepresentation = BetaRepresentation.PAIRED_SERIES,
                         settings: Optional[QuadratureSettings | SeriesSettings] = None,
                         ) -> IntegralResult:
    """``n``-th derivative of the p-k Nielsen beta function with error estimate.

    Parameters
    ----------
    n : int
        Derivative order, ``0 <= n <= 12``.
    x : float
        Argument, ``x > 0``.
    params : PKParams
    representation : BetaRepresentation
        ``PAIRED_SERIES`` sums ``p (-1)**n n! sum_m [(2mk+x)**-(n+1) -
        (2mk+x+k)**-(n+1)]``.  ``DIGAMMA_FORM`` differences the p-k digamma
        (or polygamma) at ``(x+k)/2`` and ``x/2``.  The two integral forms
        weight ``t**n`` on ``(0, inf)`` or ``(ln t)**n`` on ``(0, 1)``.
    settings : QuadratureSettings or SeriesSettings, optional
        Must match the representation family; ``None`` uses defaults.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    UnsupportedOrderError
        If ``n`` is negative, fractional or above 12.
    """
    n, x = _check_args(n, x)
    rep = BetaRepresentation(representation)
    if rep is BetaRepresentation.PAIRED_SERIES:
        res = _series(n, x, params, settings if isinstance(settings, SeriesSettings) else None)
    elif rep is BetaRepresentation.DIGAMMA_FORM:
        res = _digamma_form(n, x, params,
                            settings if isinstance(settings, SeriesSettings) else None)
    elif rep is BetaRepresentation.SEMI_INFINITE_INTEGRAL:
        res = _semi_infinite(n, x, params,
                             settings if isinstance(settings, QuadratureSettings) else None)
    else:
        res = _finite(n, x, params,
                      settings if isinstance(settings, QuadratureSettings) else None)
    if not math.isfinite(res.value):
        raise EvaluationError("beta derivative is not finite")
    return res


def pk_beta_result(x: float, params: PKParams,
                   representation: BetaRepresentation = BetaRepresentation.PAIRED_SERIES,
                   settings: Optional[QuadratureSettings | SeriesSettings] = None,
                   ) -> IntegralResult:
    """p-k Nielsen beta function with error estimate."""
    return pk_beta_deriv_result(0, x, params, representation, settings)


def pk_beta(x: float, params: PKParams,
            representation: BetaRepresentation = BetaRepresentation.PAIRED_SERIES) -> float:
    """p-k Nielsen beta function.

    Examples
    --------
    >>> round(pk_beta(1.0, PKParams(1, 1)), 12)
    0.69314718056
    """
    return pk_beta_result(x, params, representation).value


def pk_beta_deriv(n: int, x: float, params: PKParams,
                  representation: BetaRepresentation = BetaRepresentation.PAIRED_SERIES) -> float:
    """``n``-th derivative of :func:`pk_beta`; ``n = 0`` gives the function."""
    return pk_beta_deriv_result(n, x, params, representation).value


def pk_beta_abs(n: int, x: float, params: PKParams) -> float:
    """``|pk_beta_deriv(n, x)|``, computed as ``(-1)**n pk_beta_deriv(n, x)``.

    Raises
    ------
    ConsistencyError
        If the signed value has the wrong sign, which would indicate a
        summation bug rather than a property of the function.
    """
    value = (-1.0) ** int(n) * pk_beta_deriv(n, x, params)
    if value < 0:
        raise ConsistencyError(f"sign pattern broken at n={n}, x={x}")
    return value


def classic_beta(x: float) -> float:
    """Classic Nielsen beta, the case ``p = k = 1``."""
    return pk_beta(x, PKParams(1.0, 1.0))


def delta_n(n: int, x: float, params: PKParams) -> float:
    """``x**(n+1) / n! * |pk_beta_deriv(n, x)|``; tends to ``p`` as ``x -> 0``."""
    if int(n) != n or n < 1:
        raise UnsupportedOrderError("n must be a positive integer")
    n = int(n)
    return x ** (n + 1) / math.factorial(n) * pk_beta_abs(n, x, params)


def scaling_relation_check(n: int, x: float, params: PKParams) -> tuple[float, float]:
    """Two scaling probes.

    Returns
    -------
    ratio : float
        ``pk_beta_deriv(n, x; p, k) / pk_beta_deriv(n, x; k, k)``, which equals
        ``p / k``.
    second : float
        ``pk_beta(x; p, k) / beta(x / k)``, which equals ``p / k`` (a claimed
        value of ``p`` would make it ``p``).
    """
    k = params.k
    ratio = pk_beta_deriv(n, x, params) / pk_beta_deriv(n, x, PKParams(k, k))
    second = pk_beta(x, params) / classic_beta(x / k)
    return ratio, second


def reflection_check(x: float, params: PKParams) -> tuple[float, float, float]:
    """``(lhs, rhs_claimed, rhs_scaled)`` for the reflection formula at ``0 < x < k``.

    ``lhs = pk_beta(x) + pk_beta(k - x)``; ``rhs_claimed`` carries the factor
    ``p**2 / k**2`` and ``rhs_scaled`` the factor ``p / k``, both times
    ``pi / sin(pi x / k)``.
    """
    p, k = params.p, params.k
    if not (0 < x < k):
        raise DomainError("x must satisfy 0 < x < k")
    lhs = pk_beta(x, params) + pk_beta(k - x, params)
    base = math.pi / math.sin(math.pi * x / k)
    return lhs, p * p / (k * k) * base, p / k * base


def power_weighted_derivative(a: float, n: int, x: float, params: PKParams) -> float:
    """Derivative of ``F(x) = x**a |pk_beta_deriv(n, x)|``:
    ``x**(a-1) (a |beta_n(x)| - x |beta_{n+1}(x)|)``."""
    return x ** (a - 1.0) * (a * pk_beta_abs(n, x, params)
                             - x * pk_beta_abs(n + 1, x, params))


def h_derivative(m: int, n: int, x: float, params: PKParams) -> float:
    """``(-1)**m`` times the ``m``-th derivative of ``H(x) = x |pk_beta_deriv(n, x)|``.

    Equals ``x |beta_{n+m}(x)| - m |beta_{n+m-1}(x)|`` for ``m >= 1`` and
    ``H(x)`` itself for ``m = 0``.
    """
    if m == 0:
        return x * pk_beta_abs(n, x, params)
    return x * pk_beta_abs(n + m, x, params) - m * pk_beta_abs(n + m - 1, x, params)
