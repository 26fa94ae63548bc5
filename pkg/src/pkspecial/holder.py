"""Refined Hoelder machinery: lattice sums, refined AM-GM and refinement chains.

A chain has three members ``lower <= middle <= upper``.  ``upper`` is the
Hoelder bound ``prod_k ||xi_k||_{p_k}``; ``middle`` is a multinomial lattice sum
of mixed moments; ``lower`` is the Hoelder left side plus a non-negative
refinement term.  Every member is written through mixed moments
``M(e) = integral prod_k |xi_k|**e_k dmu``, supplied by a
:class:`MomentOracle`, so the same engine serves integrals, finite sums and
closed-form moment families.

Lattice exponents are the non-negative gaps ``i_{k-1} - i_k`` of a
descending index tuple ``m = i_0 >= i_1 >= ... >= i_n = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .errors import ArgumentError, CapacityError, DomainError, EvaluationError
from .numerics import (
    IntegralResult,
    QuadratureSettings,
    integrate_finite,
    integrate_semi_infinite,
)

__all__ = [
    "WeightedExponents",
    "LatticePoint",
    "RefinementChain",
    "MomentOracle",
    "INT64_MAX",
    "binomial",
    "enumerate_lattice",
    "lattice_size",
    "coeff_CA",
    "check_multinomial_2_2",
    "refined_amgm_chain",
    "holder_chain_integral",
    "holder_chain_sum",
    "young_check",
    "minkowski_check",
]

INT64_MAX = 2 ** 63 - 1
_WEIGHT_TOL = 1e-12


# ---------------------------------------------------------------------------
# exact combinatorics

@lru_cache(maxsize=None)
def _pascal_row(r: int) -> tuple[int, ...]:
    if r == 0:
        return (1,)
    prev = _pascal_row(r - 1)
    row = (1,) + tuple(prev[i - 1] + prev[i] for i in range(1, r)) + (1,)
    if row[r // 2] > INT64_MAX:
        raise CapacityError(f"binomial row {r} exceeds 64-bit range")
    return row


def binomial(r: int, s: int) -> int:
    """Exact ``C(r, s)`` from Pascal's recurrence; 0 outside ``0 <= s <= r``.

    Raises
    ------
    CapacityError
        If row ``r`` holds a value above ``2**63 - 1``.
    """
    if int(r) != r or int(s) != s or r < 0:
        raise ArgumentError("binomial arguments must be integers with r >= 0")
    r, s = int(r), int(s)
    if s < 0 or s > r:
        return 0
    return _pascal_row(r)[s]


@dataclass(frozen=True)
class WeightedExponents:
    """Hoelder exponents ``p_k > 1`` with ``sum 1/p_k = 1``."""

    p_list: tuple[float, ...]

    def __init__(self, p_list: Sequence[float]):
        values = tuple(float(p) for p in p_list)
        if len(values) < 2:
            raise ArgumentError("at least two exponents are required")
        if not all(math.isfinite(p) and p > 1.0 for p in values):
            raise DomainError("every exponent must be finite and > 1")
        total = math.fsum(1.0 / p for p in values)
        if abs(total - 1.0) > _WEIGHT_TOL:
            raise DomainError(f"reciprocal exponents sum to {total!r}, not 1")
        object.__setattr__(self, "p_list", values)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "WeightedExponents":
        """Build from conjugate weights ``1/p_k`` (normalized to sum 1)."""
        w = [float(x) for x in weights]
        total = math.fsum(w)
        if not all(x > 0 for x in w) or not total > 0:
            raise DomainError("weights must be positive")
        return cls([total / x for x in w])

    @property
    def n(self) -> int:
        return len(self.p_list)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(1.0 / p for p in self.p_list)

    @property
    def r0(self) -> float:
        """Smallest conjugate weight ``min 1/p_k``."""
        return min(self.weights)


@dataclass(frozen=True)
class LatticePoint:
    """Free indices ``(i_1, ..., i_{n-1})`` with ``i_0 = m`` and ``i_n = 0``."""

    indices: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        full = self.full
        if any(int(i) != i for i in full):
            raise ArgumentError("lattice indices must be integers")
        if any(full[k - 1] < full[k] for k in range(1, len(full))):
            raise ArgumentError(f"indices {full} are not descending from m to 0")

    @property
    def n(self) -> int:
        return len(self.indices) + 1

    @property
    def full(self) -> tuple[int, ...]:
        return (self.m,) + tuple(self.indices) + (0,)

    @property
    def gaps(self) -> tuple[int, ...]:
        """``(i_0 - i_1, ..., i_{n-1} - i_n)``; non-negative and summing to ``m``."""
        f = self.full
        return tuple(f[k - 1] - f[k] for k in range(1, len(f)))


def _check_nm(n: int, m: int, m_min: int = 1) -> tuple[int, int]:
    if int(n) != n or n < 2:
        raise ArgumentError("n must be an integer >= 2")
    if int(m) != m or m < m_min:
        raise ArgumentError(f"m must be an integer >= {m_min}")
    return int(n), int(m)


def _descending(free: int, upper: int) -> Iterator[tuple[int, ...]]:
    # lexicographic ascending over tuples upper >= i_1 >= ... >= i_free >= 0
    if free == 0:
        yield ()
        return
    for first in range(upper + 1):
        for rest in _descending(free - 1, first):
            yield (first,) + rest


def lattice_size(n: int, m: int) -> int:
    """``C(m + n - 1, n - 1)``, the number of lattice points."""
    n, m = _check_nm(n, m, 0)
    return binomial(m + n - 1, n - 1)


def enumerate_lattice(n: int, m: int) -> list[LatticePoint]:
    """All descending index tuples for ``n`` factors and power ``m``.

    Examples
    --------
    >>> [p.indices for p in enumerate_lattice(2, 2)]
    [(0,), (1,), (2,)]
    """
    n, m = _check_nm(n, m)
    return [LatticePoint(idx, m) for idx in _descending(n - 1, m)]


def coeff_CA(point: LatticePoint) -> int:
    """Lattice coefficient ``prod_{k=1}^{n-1} C(i_{k-1}, i_k)``, exact.

    Raises
    ------
    CapacityError
        If the product exceeds ``2**63 - 1``.
    """
    f = point.full
    out = 1
    for k in range(1, len(f) - 1):
        out *= binomial(f[k - 1], f[k])
        if out > INT64_MAX:
            raise CapacityError("lattice coefficient exceeds 64-bit range")
    return out


def check_multinomial_2_2(n: int, m: int, nu: Sequence[float], a: Sequence[float]) -> float:
    """Absolute residual of ``(sum nu_k a_k)**m`` against its lattice expansion.

    Returns
    -------
    float
        ``|(sum nu_k a_k)**m - sum_A C_A prod_k (nu_k a_k)**gap_k|``.
    """
    n, m = _check_nm(n, m)
    if len(nu) != n or len(a) != n:
        raise ArgumentError("nu and a must both have length n")
    if not all(w > 0 for w in nu):
        raise DomainError("weights must be positive")
    if not all(x > 0 for x in a):
        raise DomainError("entries of a must be positive")
    terms = [w * x for w, x in zip(nu, a)]
    lhs = math.fsum(terms) ** m
    parts = []
    for pt in enumerate_lattice(n, m):
        parts.append(coeff_CA(pt) * math.prod(t ** g for t, g in zip(terms, pt.gaps)))
    return abs(lhs - math.fsum(parts))


# ---------------------------------------------------------------------------
# chains

@dataclass(frozen=True)
class RefinementChain:
    """Three-member refinement chain with margins and a propagated tolerance.

    Attributes
    ----------
    lower_refined, middle, upper : float
        Chain members.
    r0 : float
        ``min 1/p_k`` used by the refinement term.
    margin_lower, margin_upper : float
        ``middle - lower_refined`` and ``upper - middle``.
    lhs_raw : float
        Unrefined Hoelder left side.
    refinement : float
        Non-negative term added to ``lhs_raw``.
    norms : tuple of float
        Norms ``||xi_k||_{p_k}``; empty for the AM-GM chain.
    tolerance : float
        Error propagated from the moment values; margins above ``-tolerance``
        are consistent with the inequality.
    """

    lower_refined: float
    middle: float
    upper: float
    r0: float
    margin_lower: float
    margin_upper: float
    lhs_raw: float = math.nan
    refinement: float = math.nan
    norms: tuple[float, ...] = ()
    tolerance: float = 0.0

    @property
    def worst_margin(self) -> float:
        return min(self.margin_lower, self.margin_upper)

    def is_ordered(self, tol: Optional[float] = None) -> bool:
        tol = self.tolerance if tol is None else tol
        return self.worst_margin >= -tol


def refined_amgm_chain(a: Sequence[float], nu: Sequence[float],
                       m: int) -> tuple[RefinementChain, list[float]]:
    """Refined weighted AM-GM chain and the power means ``U_1, ..., U_m``.

    ``U_j = (sum nu_k a_k**(1/j))**j`` decreases in ``j`` toward the weighted
    geometric mean.  The chain is
    ``prod a**nu + r0**m (sum a - n (prod a)**(1/n)) <= U_m <= sum nu_k a_k``.

    Examples
    --------
    >>> chain, _ = refined_amgm_chain([1.0, 4.0], [0.5, 0.5], 2)
    >>> round(chain.lower_refined, 12), round(chain.middle, 12), chain.upper
    (2.25, 2.25, 2.5)
    """
    if int(m) != m or m < 1:
        raise ArgumentError("m must be an integer >= 1")
    m = int(m)
    a = [float(x) for x in a]
    nu = [float(w) for w in nu]
    n = len(a)
    if n < 2 or len(nu) != n:
        raise ArgumentError("a and nu must have the same length >= 2")
    if not all(x >= 0 and math.isfinite(x) for x in a):
        raise DomainError("entries of a must be non-negative")
    if not all(w > 0 for w in nu) or abs(math.fsum(nu) - 1.0) > _WEIGHT_TOL:
        raise DomainError("weights must be positive and sum to 1")
    r0 = min(nu)
    geo = math.prod(x ** w for x, w in zip(a, nu))
    plain_geo = math.prod(a) ** (1.0 / n)
    refinement = r0 ** m * (math.fsum(a) - n * plain_geo)
    lower = geo + refinement
    u_seq = [math.fsum(w * x ** (1.0 / j) for x, w in zip(a, nu)) ** j
             for j in range(1, m + 1)]
    upper = math.fsum(w * x for x, w in zip(a, nu))
    middle = u_seq[-1]
    tol = 64 * np.finfo(float).eps * max(1.0, upper)
    chain = RefinementChain(lower, middle, upper, r0, middle - lower, upper - middle,
                            lhs_raw=geo, refinement=refinement, tolerance=tol)
    return chain, u_seq


# ---------------------------------------------------------------------------
# moment oracles

class MomentOracle:
    """Mixed moments ``M(e) = integral prod_k |xi_k|**e_k dmu`` with caching.

    Parameters
    ----------
    n : int
        Number of functions ``xi_k``.
    moment : callable
        Maps a tuple of ``n`` non-negative exponents to an
        :class:`IntegralResult` or a float (taken as exact up to rounding).
    name : str
        Label used in error messages.
    """

    def __init__(self, n: int, moment: Callable[[tuple[float, ...]], object],
                 name: str = "oracle"):
        if int(n) != n or n < 1:
            raise ArgumentError("n must be a positive integer")
        self.n = int(n)
        self._moment = moment
        self.name = name
        self._cache: dict[tuple[float, ...], IntegralResult] = {}

    def result(self, exponents: Sequence[float]) -> IntegralResult:
        """Moment with its error estimate."""
        key = tuple(float(e) for e in exponents)
        if len(key) != self.n:
            raise ArgumentError(f"expected {self.n} exponents, got {len(key)}")
        if not all(e >= 0 and math.isfinite(e) for e in key):
            raise DomainError("moment exponents must be non-negative")
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        raw = self._moment(key)
        if isinstance(raw, IntegralResult):
            res = raw
        else:
            v = float(raw)
            res = IntegralResult(v, 4 * np.finfo(float).eps * abs(v), True, 0)
        if not math.isfinite(res.value):
            raise EvaluationError(f"{self.name}: moment at {key} is not finite")
        if not res.converged:
            raise EvaluationError(f"{self.name}: moment at {key} did not converge")
        self._cache[key] = res
        return res

    def __call__(self, exponents: Sequence[float]) -> float:
        return self.result(exponents).value

    # constructors -----------------------------------------------------------

    @classmethod
    def from_matrix(cls, Q) -> "MomentOracle":
        """Counting-measure moments ``sum_j prod_k |Q[j, k]|**e_k`` (``0**0 = 1``)."""
        arr = np.abs(np.asarray(Q, dtype=float))
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ArgumentError("Q must be a non-empty 2-d array")
        if not np.all(np.isfinite(arr)):
            raise DomainError("Q must be finite")

        def moment(e):
            with np.errstate(divide="ignore"):
                cols = [np.ones(arr.shape[0]) if ek == 0 else arr[:, k] ** ek
                        for k, ek in enumerate(e)]
            rows = np.prod(np.vstack(cols), axis=0)
            return math.fsum(rows.tolist())

        return cls(arr.shape[1], moment, name="matrix")

    @classmethod
    def from_functions(cls, log_xi: Sequence[Callable], *, log_density: Callable,
                       domain: str = "unit",
                       singular_exponent: Optional[Callable[[tuple[float, ...]], Optional[float]]] = None,
                       scale: Optional[Callable[[tuple[float, ...]], float]] = None,
                       settings: Optional[QuadratureSettings] = None) -> "MomentOracle":
        """Moments by adaptive quadrature.

        Parameters
        ----------
        log_xi : sequence of callables
            ``log |xi_k(t)|``, vectorized over numpy arrays.
        log_density : callable
            Log of the density of ``mu`` against ``dt``.
        domain : {"unit", "half_line"}
            ``(0, 1)`` or ``(0, inf)``.
        singular_exponent : callable, optional
            Maps exponents to ``alpha`` in ``(0, 1]`` with the integrand
            behaving like ``t**(alpha - 1)`` at ``0``, or ``None``.
        scale : callable, optional
            Split point for the half line, per exponent vector.
        """
        if domain not in ("unit", "half_line"):
            raise ArgumentError("domain must be 'unit' or 'half_line'")
        funcs = list(log_xi)
        settings = settings or QuadratureSettings(1e-14, 1e-12, 4000)

        def moment(e):
            def f(t):
                acc = log_density(t)
                for ek, g in zip(e, funcs):
                    if ek:
                        acc = acc + ek * g(t)
                return np.exp(acc)

            alpha = singular_exponent(e) if singular_exponent else None
            if alpha is not None and alpha >= 1.0:
                alpha = None
            if domain == "unit":
                return integrate_finite(f, 0.0, 1.0, alpha, settings)
            s = scale(e) if scale else 1.0
            return integrate_semi_infinite(f, alpha, settings, scale=s)

        return cls(len(funcs), moment, name=f"quadrature[{domain}]")


# ---------------------------------------------------------------------------
# type-I / type-II chains

def _chain_from_oracle(weights: WeightedExponents, m: int,
                       oracle: MomentOracle) -> RefinementChain:
    p = weights.p_list
    n = weights.n
    if oracle.n != n:
        raise ArgumentError("oracle arity does not match the number of exponents")
    if int(m) != m or m < 1:
        raise ArgumentError("m must be an integer >= 1")
    m = int(m)
    r0 = weights.r0

    def rel(res: IntegralResult) -> float:
        return res.error_estimate / abs(res.value) if res.value else math.inf

    lhs_res = oracle.result((1.0,) * n)
    norm_res = [oracle.result(tuple(p[k] if j == k else 0.0 for j in range(n)))
                for k in range(n)]
    if any(r.value <= 0 for r in norm_res):
        raise EvaluationError("a norm vanished; the chain is undefined")
    norms = tuple(r.value ** (1.0 / p[k]) for k, r in enumerate(norm_res))
    norm_rel = [rel(r) / p[k] for k, r in enumerate(norm_res)]
    upper = math.prod(norms)
    upper_rel = math.fsum(norm_rel)

    mean_res = oracle.result(tuple(pk / n for pk in p))
    normalized = math.prod(nk ** (-pk / n) for nk, pk in zip(norms, p)) * mean_res.value
    refinement = n * r0 ** m * upper * (1.0 - normalized)
    ref_err = n * r0 ** m * upper * normalized * (rel(mean_res) + 2.0 * upper_rel)
    lower = lhs_res.value + refinement

    parts = []
    mid_err = 0.0
    for pt in enumerate_lattice(n, m):
        gaps = pt.gaps
        expo = tuple(pk * g / m for pk, g in zip(p, gaps))
        mom = oracle.result(expo)
        weight = coeff_CA(pt) * math.prod(pk ** -g for pk, g in zip(p, gaps))
        term = weight * math.prod(nk ** (1.0 - e) for nk, e in zip(norms, expo)) * mom.value
        parts.append(term)
        mid_err += abs(term) * (rel(mom) + math.fsum(abs(1.0 - e) * r
                                                     for e, r in zip(expo, norm_rel)))
    middle = math.fsum(parts)

    members = (lower, middle, upper)
    if not all(math.isfinite(v) for v in members):
        raise EvaluationError("non-finite chain member")
    rounding = 64 * np.finfo(float).eps * max(abs(v) for v in members)
    tol = (lhs_res.error_estimate + ref_err + mid_err + upper * upper_rel + rounding)
    return RefinementChain(lower, middle, upper, r0, middle - lower, upper - middle,
                           lhs_raw=lhs_res.value, refinement=refinement,
                           norms=norms, tolerance=tol)


def holder_chain_integral(weights: WeightedExponents, m: int,
                          oracle: MomentOracle) -> RefinementChain:
    """Type-I refinement chain for moments supplied by ``oracle``.

    Members, with ``N_k = M(p_k e_k)**(1/p_k)`` and gaps ``j_k``:

    * ``lower = M(1, ..., 1) + n r0**m prod N_k (1 - prod N_k**(-p_k/n) M(p/n))``
    * ``middle = sum_A C_A prod p_k**(-j_k) N_k**(1 - p_k j_k/m) M(p j / m)``
    * ``upper = prod N_k``

    ``m = 1`` is accepted as a sanity path on which ``middle == upper``.
    """
    return _chain_from_oracle(weights, m, oracle)


def holder_chain_sum(weights: WeightedExponents, m: int, Q) -> RefinementChain:
    """Type-II chain: :func:`holder_chain_integral` with counting-measure
    moments of the rows of ``Q`` (shape ``N x n``)."""
    oracle = MomentOracle.from_matrix(Q)
    return _chain_from_oracle(weights, m, oracle)


# ---------------------------------------------------------------------------
# Young and Minkowski

def young_check(u: float, v: float, alpha: float, beta: float) -> float:
    """Margin ``alpha u + beta v - u**alpha v**beta`` of Young's inequality."""
    if not (u >= 0 and v >= 0):
        raise DomainError("u and v must be non-negative")
    if not (0 < alpha < 1 and 0 < beta < 1) or abs(alpha + beta - 1.0) > _WEIGHT_TOL:
        raise DomainError("alpha and beta must lie in (0, 1) and sum to 1")
    return alpha * u + beta * v - u ** alpha * v ** beta


def minkowski_check(f: Callable, g: Callable, u_exp: float, a: float, b: float,
                    settings: Optional[QuadratureSettings] = None) -> float:
    """Margin ``||f|| + ||g|| - ||f + g||`` of Minkowski's inequality in
    ``L**u_exp`` on ``[a, b]``."""
    if not u_exp >= 1:
        raise DomainError("the exponent must be >= 1")
    settings = settings or QuadratureSettings(1e-14, 1e-12)

    def norm(h) -> float:
        res = integrate_finite(lambda t: np.abs(h(t)) ** u_exp, a, b, None, settings)
        if not res.converged:
            raise EvaluationError("norm quadrature did not converge")
        return max(res.value, 0.0) ** (1.0 / u_exp)

    fv = np.vectorize(f, otypes=[float])
    gv = np.vectorize(g, otypes=[float])
    return norm(fv) + norm(gv) - norm(lambda t: fv(t) + gv(t))
