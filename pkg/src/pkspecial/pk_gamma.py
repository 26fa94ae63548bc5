"""The p-k gamma function with its digamma and polygamma functions.

``pk_gamma(x) = integral_0^inf exp(-t**k / p) t**(x-1) dt``, which equals
``p**(x/k) / k * Gamma(x/k)``.  The closed form is the primary path; the
integral is kept as an independent cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import ArgumentError, DomainError, EvaluationError
from .numerics import (
    EULER_GAMMA,
    IntegralResult,
    QuadratureSettings,
    SeriesSettings,
    integrate_semi_infinite,
    log_gamma_classic,
    sum_paired_series,
)

__all__ = [
    "PKParams",
    "pk_gamma",
    "log_pk_gamma",
    "pk_gamma_quadrature",
    "pk_gamma_continued",
    "pk_digamma",
    "pk_digamma_result",
    "pk_polygamma",
    "pk_polygamma_result",
    "weierstrass_product",
    "check_identity_1_3",
    "check_identity_1_5",
    "check_identity_1_6",
    "check_weierstrass_4_4",
    "reflection_negative_ratio",
    "digamma_reflection_forms",
]


@dataclass(frozen=True)
class PKParams:
    """Deformation pair ``(p, k)``, both strictly positive."""

    p: float = 1.0
    k: float = 1.0

    def __post_init__(self) -> None:
        for name in ("p", "k"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be > 0")


def _require_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not (x > 0) or not math.isfinite(x):
        raise DomainError(f"{name} must be > 0")
    return x


def log_pk_gamma(x: float, params: PKParams) -> float:
    """Natural log of :func:`pk_gamma`."""
    x = _require_positive(x)
    p, k = params.p, params.k
    return (x / k) * math.log(p) - math.log(k) + log_gamma_classic(x / k)


def pk_gamma(x: float, params: PKParams) -> float:
    """p-k gamma function from the closed form ``p**(x/k) / k * Gamma(x/k)``.

    Raises
    ------
    DomainError
        If ``x <= 0``.
    EvaluationError
        If the value overflows double precision.
    """
    try:
        return math.exp(log_pk_gamma(x, params))
    except OverflowError as exc:
        raise EvaluationError("pk_gamma overflows double precision") from exc


def pk_gamma_quadrature(x: float, params: PKParams,
                        settings: Optional[QuadratureSettings] = None) -> IntegralResult:
    """p-k gamma function by direct quadrature of its defining integral.

    The split point sits at the mode of the integrand after the change
    ``v = t**k / p``, so the fold onto ``(0, 1]`` sees a smooth tail.
    """
    x = _require_positive(x)
    p, k = params.p, params.k
    scale = (p * max(1.0, x / k)) ** (1.0 / k)

    def f(t):
        return np.exp((x - 1.0) * np.log(t) - t ** k / p)

    return integrate_semi_infinite(f, x if x < 1.0 else None, settings, scale=scale)


def pk_gamma_continued(x: float, params: PKParams) -> float:
    """Closed-form continuation ``p**(x/k) / k * Gamma(x/k)`` to any real ``x``
    that is not a non-positive integer multiple of ``k``."""
    x = float(x)
    s = x / params.k
    if s <= 0 and s == math.floor(s):
        raise DomainError("x must not be a non-positive integer multiple of k")
    return params.p ** s / params.k * math.gamma(s)


# ---------------------------------------------------------------------------
# digamma and polygamma

def pk_digamma_result(x: float, params: PKParams,
                      settings: Optional[SeriesSettings] = None) -> IntegralResult:
    """Digamma series ``(ln p - gamma)/k - 1/x + sum_{n>=1} x / (nk (nk + x))``.

    The error estimate is the rigorous tail bound of the series.
    """
    x = _require_positive(x)
    p, k = params.p, params.k

    def term(j):
        nk = (j + 1.0) * k
        return x / (nk * (nk + x))

    def tail(n_terms: int) -> float:
        return math.log1p(x / ((n_terms + 1.0) * k)) / k

    def partial(start: int, stop: int) -> float:
        return kernels.digamma_partial(x, k, start + 1, stop + 1)

    series = sum_paired_series(term, settings, tail=tail, partial=partial)
    head = (math.log(p) - EULER_GAMMA) / k - 1.0 / x
    return IntegralResult(head + series.value, series.error_estimate,
                          series.converged, series.evaluations)


def pk_digamma(x: float, params: PKParams,
               settings: Optional[SeriesSettings] = None) -> float:
    """Logarithmic derivative of :func:`pk_gamma`."""
    return pk_digamma_result(x, params, settings).value


def pk_polygamma_result(n: int, x: float, params: PKParams,
                        settings: Optional[SeriesSettings] = None) -> IntegralResult:
    """``n``-th derivative of :func:`pk_digamma` for ``n >= 1``.

    Term-wise differentiation gives
    ``(-1)**(n+1) * n! * sum_{m>=0} (mk + x)**-(n+1)``, which does not depend
    on ``p``.
    """
    if int(n) != n or n < 1:
        raise ArgumentError("n must be a positive integer")
    n = int(n)
    x = _require_positive(x)
    k = params.k
    s = n + 1.0

    def term(m):
        return (m * k + x) ** -s

    def tail(n_terms: int) -> float:
        return (n_terms * k + x) ** (1.0 - s) / (k * (s - 1.0))

    def partial(start: int, stop: int) -> float:
        return kernels.hurwitz_partial(s, x, k, start, stop)

    # scale the absolute target so it is relative to the leading term
    settings = settings or SeriesSettings()
    lead = x ** -s
    local = SeriesSettings(settings.abs_tol * max(1.0, lead), settings.max_terms)
    series = sum_paired_series(term, local, tail=tail, partial=partial)
    factor = (-1.0) ** (n + 1) * math.factorial(n)
    return series.scale(factor)


def pk_polygamma(n: int, x: float, params: PKParams,
                 settings: Optional[SeriesSettings] = None) -> float:
    """p-k polygamma function of order ``n >= 1``."""
    return pk_polygamma_result(n, x, params, settings).value


# ---------------------------------------------------------------------------
# identity residuals

def _residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def check_identity_1_3(params: PKParams) -> float:
    """Residual of ``pk_gamma(p) = p**(p/k) / k * Gamma(p/k)``; the left side
    comes from quadrature so the check is not circular."""
    p, k = params.p, params.k
    lhs = pk_gamma_quadrature(p, params, QuadratureSettings(1e-15, 1e-13)).value
    rhs = p ** (p / k) / k * math.exp(log_gamma_classic(p / k))
    return _residual(lhs, rhs)


def check_identity_1_5(x: float, params: PKParams) -> float:
    """Residual of ``pk_gamma(x) pk_gamma(k - x) = p pi / (k**2 sin(pi x / k))``."""
    p, k = params.p, params.k
    if not (0 < x < k):
        raise DomainError("x must satisfy 0 < x < k")
    lhs = pk_gamma(x, params) * pk_gamma(k - x, params)
    rhs = p / k ** 2 * math.pi / math.sin(math.pi * x / k)
    return _residual(lhs, rhs)


def check_identity_1_6(m: int, x: float, params: PKParams) -> float:
    """Residual of the multiplication formula
    ``prod_r pk_gamma(x + r k / m) = p**((m-1)/2) / k**(m-1) (2 pi)**((m-1)/2)
    m**(1/2 - m x / k) pk_gamma(m x)``, compared in log space."""
    if int(m) != m or m < 2:
        raise ArgumentError("m must be an integer >= 2")
    m = int(m)
    x = _require_positive(x)
    p, k = params.p, params.k
    log_lhs = math.fsum(log_pk_gamma(x + r * k / m, params) for r in range(m))
    log_rhs = ((m - 1) / 2.0 * math.log(p) - (m - 1) * math.log(k)
               + (m - 1) / 2.0 * math.log(2.0 * math.pi)
               + (0.5 - m * x / k) * math.log(m) + log_pk_gamma(m * x, params))
    return _residual(math.exp(log_lhs), math.exp(log_rhs))


def weierstrass_product(x: float, params: PKParams, N: int,
                        consistent: bool = False) -> float:
    """Truncated Weierstrass product for ``1 / pk_gamma(x)``.

    With ``consistent=False`` the prefactor is ``x / (k p**(x/k))``; with
    ``consistent=True`` it is ``x / p**(x/k)``, the prefactor that the closed
    form actually implies.  Both share the factor
    ``exp(gamma x / k) prod_{n<=N} (1 + x/(nk)) exp(-x/(nk))``.
    """
    x = _require_positive(x)
    if int(N) != N or N < 1:
        raise ArgumentError("N must be a positive integer")
    p, k = params.p, params.k
    s = x / k
    log_prod = kernels.weierstrass_log_partial(s, 1, int(N) + 1)
    prefactor = x * p ** (-s) * (1.0 if consistent else 1.0 / k)
    return prefactor * math.exp(EULER_GAMMA * s + log_prod)


def check_weierstrass_4_4(x: float, params: PKParams, N: int) -> float:
    """Residual of the ``N``-term product against ``1 / pk_gamma(x)``."""
    return _residual(weierstrass_product(x, params, N), 1.0 / pk_gamma(x, params))


def reflection_negative_ratio(x: float, params: PKParams) -> float:
    """Ratio of ``pk_gamma(x) pk_gamma(-x)`` (closed-form continuation) to
    ``pi / (x k sin(pi x / k))``.  The continuation gives ``-1``."""
    x = _require_positive(x)
    k = params.k
    lhs = pk_gamma_continued(x, params) * pk_gamma_continued(-x, params)
    rhs = math.pi / (x * k * math.sin(math.pi * x / k))
    return lhs / rhs


def digamma_reflection_forms(x: float, params: PKParams) -> tuple[float, float, float, float]:
    """Both digamma reflection candidates at ``0 < x < k``.

    Returns
    -------
    tuple
        ``(sum, sum_claim, difference, difference_exact)`` where ``sum`` is
        ``psi(x) + psi(k - x)`` with its claimed value ``p pi cot(pi x/k) / k**2``
        and ``difference`` is ``psi(x) - psi(k - x)`` with the value
        ``-pi cot(pi x / k) / k`` obtained by differentiating the log of the
        reflection formula.
    """
    p, k = params.p, params.k
    if not (0 < x < k):
        raise DomainError("x must satisfy 0 < x < k")
    a = pk_digamma(x, params)
    b = pk_digamma(k - x, params)
    cot = 1.0 / math.tan(math.pi * x / k)
    return a + b, p / k ** 2 * math.pi * cot, a - b, -math.pi / k * cot
