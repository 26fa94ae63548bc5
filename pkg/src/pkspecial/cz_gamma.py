"""Chaudhry-Zubair gamma functions and their derivatives.

Three integrands of the form ``t**(x-1) exp(w(t))`` on ``(0, inf)``:

* ordinary: ``w(t) = -t - c/t``
* p-k extension: ``w(t) = -t**k/p - c p / t**k``
* v-extension: ``w(t) = -t**v/v - b**v t**(-v) / v``

Derivatives in ``x`` carry the weight ``(ln t)**n``; those integrals are
split at ``t = 1`` so each piece has one sign.  The substitution
``u = t**k / p`` maps the p-k extension onto the ordinary function:
``p**(x/k) / k * cz_gamma(x/k, c)``; likewise the v-extension equals
``v**(z/v - 1) * cz_gamma(z/v, b**v / v**2)``.  Both identities serve as
independent cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, EvaluationError, UnsupportedOrderError
from .numerics import (
    IntegralResult,
    QuadratureSettings,
    integrate_finite,
    integrate_semi_infinite,
    integrate_upper,
)
from .pk_gamma import PKParams

__all__ = [
    "CZParams",
    "VExtParams",
    "MAX_CZ_ORDER",
    "cz_gamma",
    "cz_gamma_deriv",
    "cz_gamma_result",
    "ext_cz_gamma",
    "ext_cz_gamma_deriv",
    "ext_cz_gamma_result",
    "ext_cz_abslog_moment",
    "v_ext_cz_gamma",
    "v_ext_cz_gamma_deriv",
    "v_ext_cz_gamma_result",
    "check_recurrence_5_2",
    "check_reflection_5_3",
]

MAX_CZ_ORDER = 8


@dataclass(frozen=True)
class CZParams:
    """Regularizer ``c >= 0`` with the deformation pair of the p-k extension."""

    c: float = 0.0
    pk: PKParams = field(default_factory=PKParams)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c) and self.c >= 0):
            raise DomainError("c must be >= 0")


@dataclass(frozen=True)
class VExtParams:
    """Parameters ``b >= 0`` and ``v > 0`` of the v-extension."""

    b: float = 0.0
    v: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.b) and self.b >= 0):
            raise DomainError("b must be >= 0")
        if not (math.isfinite(self.v) and self.v > 0):
            raise DomainError("v must be > 0")


def _mode(s: float, c: float) -> float:
    """Maximizer of ``u**(s-1) exp(-u - c/u)``; 0 when the maximum sits at 0."""
    root = math.hypot(s - 1.0, 2.0 * math.sqrt(c)) if c > 0 else abs(s - 1.0)
    return max(0.0, 0.5 * ((s - 1.0) + root))


class _Kernel:
    """``t**(x-1) exp(w(t))`` written as ``exp(log_integrand(t))``."""

    def __init__(self, x: float, log_w: Callable, t_peak: float, regular: bool):
        self.x = x
        self.log_w = log_w
        self.t_peak = t_peak
        self.regular = regular  # True when w kills the t -> 0 end

    def __call__(self, t):
        return np.exp((self.x - 1.0) * np.log(t) + self.log_w(t))


def _check_order(n: float, integer: bool = True) -> None:
    if integer and (int(n) != n):
        raise UnsupportedOrderError("derivative order must be an integer")
    if n < 0:
        raise UnsupportedOrderError("derivative order must be non-negative")
    if n > MAX_CZ_ORDER:
        raise UnsupportedOrderError(f"derivative order must be <= {MAX_CZ_ORDER}")


def _weighted(kernel: _Kernel, power: float, absolute: bool,
              settings: Optional[QuadratureSettings]) -> IntegralResult:
    """``integral_0^inf L(t)**power kernel(t) dt`` with ``L = ln t`` (or ``|ln t|``)."""
    settings = settings or QuadratureSettings()
    x = kernel.x
    singular = None if kernel.regular or x >= 1.0 else x
    if not kernel.regular and x <= 0:
        raise DomainError("x must be > 0 when the regularizing parameter is 0")
    peak = kernel.t_peak
    if power == 0:
        scale = peak if peak > 0 else 1.0
        res = integrate_semi_infinite(kernel, singular, settings, scale=scale)
    else:
        def head_f(t):
            lt = np.log(t)
            w = (-lt) ** power if absolute else lt ** power
            return w * kernel(t)

        def tail_f(t):
            return np.log(t) ** power * kernel(t)

        half = QuadratureSettings(0.5 * settings.abs_tol, settings.rel_tol,
                                  settings.max_subdivisions)
        head = integrate_finite(head_f, 0.0, 1.0, singular, half)
        tail = integrate_upper(tail_f, 1.0, half, scale=max(1.0, peak))
        res = head.combine(tail)
    if not math.isfinite(res.value):
        raise EvaluationError("integral is not finite")
    return res


def _require_converged(res: IntegralResult) -> float:
    if not res.converged:
        raise EvaluationError(
            f"quadrature did not converge (estimate {res.value!r}, "
            f"error {res.error_estimate!r})")
    return res.value


# ---------------------------------------------------------------------------
# ordinary and p-k extension

def _ext_kernel(x: float, params: CZParams) -> _Kernel:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    c = params.c
    p, k = params.pk.p, params.pk.k
    if c == 0 and not x > 0:
        raise DomainError("x must be > 0 when c = 0")
    u_peak = _mode(x / k, c)
    t_peak = (p * u_peak) ** (1.0 / k) if u_peak > 0 else p ** (1.0 / k)
    cp = c * p

    if c == 0:
        def log_w(t):
            return -(t ** k) / p
    else:
        def log_w(t):
            tk = t ** k
            return -tk / p - cp / tk

    return _Kernel(x, log_w, t_peak, regular=c > 0)


def ext_cz_gamma_result(n: int, x: float, params: CZParams,
                        settings: Optional[QuadratureSettings] = None) -> IntegralResult:
    """``n``-th derivative of the p-k extended CZ gamma with error estimate."""
    _check_order(n)
    return _weighted(_ext_kernel(x, params), int(n), False, settings)


def ext_cz_gamma(x: float, params: CZParams,
                 settings: Optional[QuadratureSettings] = None) -> float:
    """p-k extended Chaudhry-Zubair gamma,
    ``integral_0^inf t**(x-1) exp(-t**k/p - c p / t**k) dt``.

    ``c = 0`` reduces to the p-k gamma; ``p = k = 1`` to :func:`cz_gamma`.
    Any real ``x`` is accepted when ``c > 0``.

    Raises
    ------
    DomainError
        ``c = 0`` with ``x <= 0``.
    EvaluationError
        Quadrature did not converge.
    """
    return _require_converged(ext_cz_gamma_result(0, x, params, settings))


def ext_cz_gamma_deriv(n: int, x: float, params: CZParams,
                       settings: Optional[QuadratureSettings] = None) -> float:
    """``n``-th derivative in ``x`` (weight ``(ln t)**n``), ``0 <= n <= 8``."""
    return _require_converged(ext_cz_gamma_result(n, x, params, settings))


def ext_cz_abslog_moment(s: float, x: float, params: CZParams,
                         settings: Optional[QuadratureSettings] = None) -> float:
    """``integral |ln t|**s t**(x-1) exp(w(t)) dt`` for real ``0 <= s <= 8``.

    Coincides with :func:`ext_cz_gamma_deriv` for even integer ``s`` and
    interpolates log-convexly between them.
    """
    _check_order(s, integer=False)
    return _require_converged(_weighted(_ext_kernel(x, params), float(s), True, settings))


def cz_gamma_result(n: int, x: float, c: float,
                    settings: Optional[QuadratureSettings] = None) -> IntegralResult:
    """``n``-th derivative of the ordinary CZ gamma with error estimate."""
    return ext_cz_gamma_result(n, x, CZParams(c, PKParams(1.0, 1.0)), settings)


def cz_gamma(x: float, c: float, settings: Optional[QuadratureSettings] = None) -> float:
    """Ordinary Chaudhry-Zubair gamma ``integral_0^inf t**(x-1) exp(-t - c/t) dt``.

    Examples
    --------
    >>> round(cz_gamma(3.0, 0.0), 12)
    2.0
    """
    return _require_converged(cz_gamma_result(0, x, c, settings))


def cz_gamma_deriv(n: int, x: float, c: float,
                   settings: Optional[QuadratureSettings] = None) -> float:
    """``n``-th derivative in ``x`` of :func:`cz_gamma`, ``0 <= n <= 8``."""
    return _require_converged(cz_gamma_result(n, x, c, settings))


# ---------------------------------------------------------------------------
# v-extension

def _v_kernel(z: float, params: VExtParams) -> _Kernel:
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("z must be finite")
    b, v = params.b, params.v
    if b == 0 and not z > 0:
        raise DomainError("z must be > 0 when b = 0")
    bv = b ** v
    u_peak = _mode(z / v, bv / (v * v))
    t_peak = (v * u_peak) ** (1.0 / v) if u_peak > 0 else v ** (1.0 / v)

    if b == 0:
        def log_w(t):
            return -(t ** v) / v
    else:
        def log_w(t):
            tv = t ** v
            return -(tv + bv / tv) / v

    return _Kernel(z, log_w, t_peak, regular=b > 0)


def v_ext_cz_gamma_result(N: int, z: float, params: VExtParams,
                          settings: Optional[QuadratureSettings] = None) -> IntegralResult:
    """``N``-th derivative of the v-extended CZ gamma with error estimate."""
    _check_order(N)
    return _weighted(_v_kernel(z, params), int(N), False, settings)


def v_ext_cz_gamma(z: float, params: VExtParams,
                   settings: Optional[QuadratureSettings] = None) -> float:
    """v-extended CZ gamma ``integral t**(z-1) exp(-t**v/v - b**v t**-v / v) dt``."""
    return _require_converged(v_ext_cz_gamma_result(0, z, params, settings))


def v_ext_cz_gamma_deriv(N: int, z: float, params: VExtParams,
                         settings: Optional[QuadratureSettings] = None) -> float:
    """``N``-th derivative in ``z`` of :func:`v_ext_cz_gamma`, ``0 <= N <= 8``."""
    return _require_converged(v_ext_cz_gamma_result(N, z, params, settings))


# ---------------------------------------------------------------------------
# identity residuals

def check_recurrence_5_2(x: float, c: float,
                         settings: Optional[QuadratureSettings] = None) -> float:
    """Relative residual of ``G(x+1) = x G(x) + c G(x-1)`` for ``G = cz_gamma``."""
    lhs = cz_gamma(x + 1.0, c, settings)
    rhs = x * cz_gamma(x, c, settings)
    if c != 0:
        rhs += c * cz_gamma(x - 1.0, c, settings)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def check_reflection_5_3(x: float, c: float,
                         settings: Optional[QuadratureSettings] = None) -> float:
    """Relative residual of ``G(-x) = c**(-x) G(x)`` for ``G = cz_gamma``, ``c > 0``."""
    if not c > 0:
        raise DomainError("c must be > 0 for the reflection identity")
    lhs = cz_gamma(-x, c, settings)
    rhs = c ** (-x) * cz_gamma(x, c, settings)
    return abs(lhs - rhs) / max(1.0, abs(rhs))
