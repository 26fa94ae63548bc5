"""Checks for the refinement chains and their special-function instances."""
from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from ..cz_gamma import CZParams, VExtParams, ext_cz_gamma_deriv, v_ext_cz_gamma_deriv
from ..errors import ArgumentError
from ..holder import (
    MomentOracle,
    RefinementChain,
    WeightedExponents,
    check_multinomial_2_2,
    holder_chain_integral,
    holder_chain_sum,
    minkowski_check,
    refined_amgm_chain,
    young_check,
)
from ..nielsen_beta import pk_beta_deriv
from ..pk_gamma import PKParams
from .core import CheckContext, register

_AGREE = 1e-8
_MISMATCH = 1e-8

_P_VECTORS = {
    2: ((2.0, 2.0), (3.0, 1.5), (1.25, 5.0)),
    3: ((3.0, 3.0, 3.0), (2.0, 4.0, 4.0), (2.0, 3.0, 6.0)),
}
_X_VECTORS = {
    2: ((1.0, 2.0), (0.3, 5.0), (0.7, 0.7)),
    3: ((1.0, 2.0, 0.5), (0.3, 0.7, 5.0)),
}


# ---------------------------------------------------------------------------
# shared helpers

def _setups(ctx: CheckContext) -> list[tuple[WeightedExponents, tuple[float, ...]]]:
    """``(weights, x_vector)`` pairs.

    A ``p`` override of length ``n`` is used as the exponent vector; an ``x``
    override of length ``n`` is used as the argument vector, otherwise all
    size-``n`` multisets drawn from it.
    """
    out = []
    for n in ctx.grid.ints("n", (2, 3)):
        if ctx.grid.p is None:
            p_vecs = _P_VECTORS.get(n, ())
        else:
            p_vecs = (ctx.grid.p,) if len(ctx.grid.p) == n else ()
        if ctx.grid.x is None:
            x_vecs = _X_VECTORS.get(n, ())
        elif len(ctx.grid.x) == n:
            x_vecs = (ctx.grid.x,)
        else:
            x_vecs = tuple(itertools.combinations_with_replacement(ctx.grid.x, n))
        for p in p_vecs:
            weights = WeightedExponents(p)
            out.extend((weights, tuple(x)) for x in x_vecs)
    if not out:
        raise ArgumentError("no chain setup matches the grid (check n, p and x lengths)")
    return out


def _record_chain(ctx: CheckContext, pt: dict, chain: RefinementChain) -> None:
    """Ordering and refinement-sign margins, relative to the upper member, with
    the propagated numerical error credited."""
    scale = max(abs(chain.upper), abs(chain.lower_refined), 1e-300)
    slack = chain.tolerance
    ctx.record({**pt, "member": "lower<=middle"}, (chain.margin_lower + slack) / scale)
    ctx.record({**pt, "member": "middle<=upper"}, (chain.margin_upper + slack) / scale)
    ctx.record({**pt, "member": "refinement>=0"}, (chain.refinement + slack) / scale)


def _record_monotone(ctx: CheckContext, pt: dict, chains: Sequence[tuple[int, RefinementChain]]
                     ) -> None:
    """Middle member non-increasing along consecutive ``m``."""
    for (m1, c1), (m2, c2) in zip(chains, chains[1:]):
        scale = max(abs(c1.middle), 1e-300)
        margin = (c1.middle - c2.middle + c1.tolerance + c2.tolerance) / scale
        ctx.record({**pt, "m": [m1, m2], "member": "middle decreasing in m"}, margin)


def _record_agreement(ctx: CheckContext, pt: dict, a: RefinementChain,
                      b: RefinementChain) -> None:
    """Both evaluation paths agree within ``_AGREE`` relative, member by member."""
    for name in ("lower_refined", "middle", "upper"):
        va, vb = getattr(a, name), getattr(b, name)
        gap = abs(va - vb) / max(abs(va), abs(vb), 1e-300)
        ctx.record({**pt, "member": f"{name} paths agree"}, _AGREE - gap)


def _run_chain_family(ctx: CheckContext, label: dict, weights: WeightedExponents,
                      oracle_path: MomentOracle, reduced_path: MomentOracle
                      ) -> list[tuple[int, RefinementChain]]:
    chains = []
    for m in ctx.grid.ints("m", (2, 3, 4)):
        pt = {**label, "p": list(weights.p_list), "m": m}
        pair = ctx.attempt(pt, lambda: (holder_chain_integral(weights, m, oracle_path),
                                        holder_chain_integral(weights, m, reduced_path)))
        if pair is None:
            continue
        generic, reduced = pair
        _record_chain(ctx, pt, generic)
        _record_agreement(ctx, pt, generic, reduced)
        chains.append((m, generic))
    _record_monotone(ctx, {**label, "p": list(weights.p_list)}, chains)
    return chains


def _argument(weights: WeightedExponents, x: Sequence[float], e: Sequence[float]) -> float:
    return math.fsum(ek * xk / pk for ek, xk, pk in zip(e, x, weights.p_list))


def _weight_power(weights: WeightedExponents, e: Sequence[float]) -> float:
    return math.fsum(ek / pk for ek, pk in zip(e, weights.p_list))


# ---------------------------------------------------------------------------
# lattice identity and AM-GM chain

def _random_weights(rng, n: int) -> list[float]:
    raw = [rng.uniform(0.1, 1.0) for _ in range(n)]
    total = math.fsum(raw)
    return [r / total for r in raw]


@register("eq_2_2_multinomial", "Thm 2.2 (Eq 2.2)",
          "Lattice expansion with exact binomial products C_A reproduces "
          "(sum nu_k a_k)**m; margin is minus the relative residual over random "
          "instances with n <= 4, m <= 5, plus every (n, m) with n <= 5, m <= 8.")
def _eq_2_2(ctx: CheckContext) -> None:
    rng = ctx.rng
    cases = [(n, m) for n in range(2, 6) for m in range(1, 9)]
    cases += [(rng.randint(2, 4), rng.randint(1, 5)) for _ in range(2 * ctx.grid.sample_count)]
    for n, m in cases:
        nu = [rng.uniform(0.1, 2.0) for _ in range(n)]
        a = [rng.uniform(0.0, 5.0) for _ in range(n)]
        pt = {"n": n, "m": m, "nu": nu, "a": a}
        res = ctx.attempt(pt, lambda: check_multinomial_2_2(n, m, nu, a))
        if res is None:
            continue
        total = math.fsum(w * v for w, v in zip(nu, a)) ** m
        ctx.record(pt, -res / max(total, 1e-300))


@register("eq_2_3_refined_amgm", "Thm 2.3 (Eq 2.3)",
          "Refined weighted AM-GM chain ordering, U_j non-increasing in j, the hand "
          "value U_2 = 2.25 at a = (1, 4) and the limit U_m -> geometric mean.")
def _eq_2_3(ctx: CheckContext) -> None:
    rng = ctx.rng
    for _ in range(4 * ctx.grid.sample_count):
        n = rng.randint(2, 4)
        m = rng.randint(1, 8)
        nu = _random_weights(rng, n)
        a = [rng.uniform(0.0, 10.0) for _ in range(n)]
        pt = {"n": n, "m": m, "nu": nu, "a": a}
        res = ctx.attempt(pt, lambda: refined_amgm_chain(a, nu, m))
        if res is None:
            continue
        chain, u_seq = res
        scale = max(chain.upper, 1e-300)
        ctx.record({**pt, "member": "lower<=middle"}, chain.margin_lower / scale)
        ctx.record({**pt, "member": "middle<=upper"}, chain.margin_upper / scale)
        for j in range(1, len(u_seq)):
            ctx.record({**pt, "member": f"U_{j}>=U_{j + 1}"},
                       (u_seq[j - 1] - u_seq[j]) / scale)
    _, u_seq = refined_amgm_chain([1.0, 4.0], [0.5, 0.5], 2)
    ctx.record({"a": [1, 4], "member": "U_2 = 2.25"}, -abs(u_seq[1] - 2.25))
    big = 10 ** 6
    u_big = (0.5 + 0.5 * 4.0 ** (1.0 / big)) ** big
    ctx.record({"a": [1, 4], "m": big, "member": "U_m -> 2"}, 1e-4 - abs(u_big - 2.0))
    u50 = (0.5 + 0.5 * 4.0 ** (1.0 / 50)) ** 50
    ctx.info(f"U_m approaches the geometric mean like 1/m: U_50 = {u50:.10g} at a = (1, 4).")


# ---------------------------------------------------------------------------
# abstract type-I and type-II chains

def _gamma_oracle(a: Sequence[float], b: Sequence[float]) -> MomentOracle:
    """Closed-form moments of ``xi_k = t**a_k exp(-b_k t)`` under ``dt`` on the half line."""

    def moment(e):
        big_a = math.fsum(ek * ak for ek, ak in zip(e, a))
        big_b = math.fsum(ek * bk for ek, bk in zip(e, b))
        return math.exp(math.lgamma(big_a + 1.0) - (big_a + 1.0) * math.log(big_b))

    return MomentOracle(len(a), moment, name="gamma-moments")


@register("eq_3_1_3_2_chains", "Thms 3.1-3.2 (Eqs 3.1-3.2)",
          "Type-I chains with closed-form gamma moments and type-II chains over random "
          "positive matrices: ordering, refinement sign and middle non-increasing in m.")
def _eq_3_1_3_2(ctx: CheckContext) -> None:
    rng = ctx.rng
    ms = ctx.grid.ints("m", (2, 3, 4))
    for n in ctx.grid.ints("n", (2, 3)):
        for trial in range(ctx.grid.sample_count):
            weights = WeightedExponents.from_weights(_random_weights(rng, n))
            a = [rng.uniform(0.0, 2.0) for _ in range(n)]
            b = [rng.uniform(0.5, 2.0) for _ in range(n)]
            rows = rng.randint(1, 20)
            Q = [[rng.uniform(0.1, 3.0) for _ in range(n)] for _ in range(rows)]
            base = {"n": n, "trial": trial, "p": list(weights.p_list)}
            oracle = _gamma_oracle(a, b)
            integral, discrete = [], []
            for m in ms:
                pt = {**base, "m": m}
                chain = ctx.attempt({**pt, "kind": "integral"},
                                    lambda: holder_chain_integral(weights, m, oracle))
                if chain is not None:
                    _record_chain(ctx, {**pt, "kind": "integral"}, chain)
                    integral.append((m, chain))
                chain = ctx.attempt({**pt, "kind": "sum"},
                                    lambda: holder_chain_sum(weights, m, Q))
                if chain is not None:
                    _record_chain(ctx, {**pt, "kind": "sum"}, chain)
                    discrete.append((m, chain))
            _record_monotone(ctx, {**base, "kind": "integral"}, integral)
            _record_monotone(ctx, {**base, "kind": "sum"}, discrete)


# ---------------------------------------------------------------------------
# beta instances

def _beta_oracles(weights: WeightedExponents, x: Sequence[float], u: float, v: float
                  ) -> tuple[MomentOracle, MomentOracle, MomentOracle]:
    """Generic-quadrature, reduced and displayed-form moment oracles for
    ``xi_k = (u/v) t**(x_k/(v p_k))`` under ``dt/(t(1+t))`` on ``(0, 1)``."""
    params = PKParams(u, v)
    p = weights.p_list
    log_ratio = math.log(u / v)

    def make_log_xi(xk: float, pk: float) -> Callable:
        return lambda t: log_ratio + xk / (v * pk) * np.log(t)

    generic = MomentOracle.from_functions(
        [make_log_xi(xk, pk) for xk, pk in zip(x, p)],
        log_density=lambda t: -np.log(t) - np.log1p(t),
        domain="unit",
        singular_exponent=lambda e: _argument(weights, x, e) / v,
    )

    def reduced(e):
        total = math.fsum(e)
        return (u / v) ** (total - 1.0) * pk_beta_deriv(0, _argument(weights, x, e), params)

    def displayed(e):
        return pk_beta_deriv(0, _argument(weights, x, e), params)

    return (generic, MomentOracle(len(p), reduced, name="beta-reduced"),
            MomentOracle(len(p), displayed, name="beta-displayed"))


def _uv_pairs(ctx: CheckContext) -> list[tuple[float, float]]:
    return list(itertools.product(ctx.grid.get("u", (1.0, 2.0)),
                                  ctx.grid.get("v", (1.0, 3.0))))


@register("thm_6_1_chain", "Thm 6.1 (Eqs 6.3-6.6)",
          "Type-I chain for the p-k beta with xi_k = (u/v) t**(x_k/(v p_k)) and "
          "dmu = dt/(t(1+t)) on (0, 1): ordering and m-monotonicity by generic "
          "quadrature, agreement with the reduced beta path within 1e-8, and the "
          "displayed beta-only moment forms compared member by member. The displayed "
          "middle exponent 1 - j_k/m on beta(x_k) corresponds to 1/p_k - j_k/m here.")
def _thm_6_1(ctx: CheckContext) -> None:
    factors = {}
    for u, v in _uv_pairs(ctx):
        for weights, x in _setups(ctx):
            label = {"u": u, "v": v, "x": list(x)}
            generic, reduced, displayed = _beta_oracles(weights, x, u, v)
            chains = _run_chain_family(ctx, label, weights, generic, reduced)
            for m, chain in chains:
                pt = {**label, "p": list(weights.p_list), "m": m}
                shown = ctx.attempt(pt, lambda: holder_chain_integral(weights, m, displayed))
                if shown is None:
                    continue
                _record_chain(ctx, {**pt, "form": "displayed"}, shown)
                ratio = chain.upper / shown.upper
                if abs(ratio - 1.0) > _MISMATCH:
                    factors[(u, v, weights.n)] = ratio
    if factors:
        listed = ", ".join(f"(u={u:g}, v={v:g}, n={n}): {r:.10g}"
                           for (u, v, n), r in sorted(factors.items()))
        ctx.note("With xi_k = (u/v) t**(x_k/(v p_k)) the stated moment equalities hold only "
                 "up to powers of u/v (product moment (u/v)**(n-1), mean moment "
                 "(u/v)**(sum p_k/n - 1), norms (u/v)**(1 - 1/p_k), lattice moments "
                 "(u/v)**(sum p_k j_k/m - 1)); every chain member carries the common "
                 "factor (u/v)**(n-1), so the displayed chain still holds. Factor "
                 f"generic/displayed: {listed}.")


def _beta_nth_oracles(weights: WeightedExponents, x: Sequence[float], u: float, v: float,
                      order: int) -> tuple[MomentOracle, MomentOracle]:
    """``xi_k = exp(-x_k t/(v p_k))`` under ``(u/v**(N+1)) t**N/(1+exp(-t)) dt``."""
    params = PKParams(u, v)
    p = weights.p_list
    log_const = math.log(u) - (order + 1) * math.log(v)

    def make_log_xi(xk: float, pk: float) -> Callable:
        return lambda t: -xk * t / (v * pk)

    def log_density(t):
        with np.errstate(divide="ignore"):
            return log_const + order * np.log(t) - np.logaddexp(0.0, -t)

    def scale(e):
        rate = _argument(weights, x, e) / v
        return max(1.0, (order + 1) / rate) if rate > 0 else 1.0

    generic = MomentOracle.from_functions(
        [make_log_xi(xk, pk) for xk, pk in zip(x, p)],
        log_density=log_density, domain="half_line", scale=scale)

    def reduced(e):
        return abs(pk_beta_deriv(order, _argument(weights, x, e), params))

    return generic, MomentOracle(len(p), reduced, name="beta-derivative-reduced")


@register("thm_6_2_chain_nth", "Thm 6.2 (Eqs 6.7-6.8)",
          "Type-I chain for |beta^(N)| with xi_k = exp(-x_k t/(v p_k)) and "
          "dmu = (u/v**(N+1)) t**N/(1+exp(-t)) dt on (0, inf), N in {1, 2}: ordering, "
          "m-monotonicity and agreement with the reduced derivative path.")
def _thm_6_2(ctx: CheckContext) -> None:
    for order in ctx.grid.ints("N", (1, 2)):
        for u, v in _uv_pairs(ctx):
            for weights, x in _setups(ctx):
                label = {"N": order, "u": u, "v": v, "x": list(x)}
                generic, reduced = _beta_nth_oracles(weights, x, u, v, order)
                _run_chain_family(ctx, label, weights, generic, reduced)


# ---------------------------------------------------------------------------
# gamma-family instances

def _gamma_family_oracles(weights: WeightedExponents, x: Sequence[float], order: int,
                          log_weight: Callable, reduced_value: Callable[[float], float]
                          ) -> tuple[MomentOracle, MomentOracle]:
    """``xi_k = (|ln t|**N t**x_k exp(w))**(1/p_k)`` under ``dt/t`` on the half line.

    Every exponent vector the chain needs has ``sum e_k/p_k = 1``, so each
    moment is one evaluation ``reduced_value(sum e_k x_k/p_k)``.
    """
    p = weights.p_list

    def make_log_xi(xk: float, pk: float) -> Callable:
        def log_xi(t):
            lt = np.log(t)
            acc = xk * lt + log_weight(t)
            if order:
                with np.errstate(divide="ignore"):
                    acc = acc + order * np.log(np.abs(lt))
            return acc / pk
        return log_xi

    generic = MomentOracle.from_functions(
        [make_log_xi(xk, pk) for xk, pk in zip(x, p)],
        log_density=lambda t: -np.log(t), domain="half_line")

    def reduced(e):
        if abs(_weight_power(weights, e) - 1.0) > 1e-12:
            raise ArgumentError("reduced path needs sum e_k/p_k = 1")
        return reduced_value(_argument(weights, x, e))

    return generic, MomentOracle(len(p), reduced, name="gamma-reduced")


def _gamma_families(ctx: CheckContext):
    """``(label, log_weight, reduced_value_factory)`` for the three CZ families."""
    out = []
    for c in ctx.grid.get("c", (0.5, 2.0)):
        for u, v in itertools.product(ctx.grid.get("u", (1.0, 2.0)),
                                      ctx.grid.get("v", (1.0, 0.5))):
            def log_weight(t, c=c, u=u, v=v):
                tv = t ** v
                return -tv / u - c * u / tv

            def value(order, c=c, u=u, v=v):
                params = CZParams(c, PKParams(u, v))
                return lambda y: ext_cz_gamma_deriv(order, y, params)

            family = "ordinary" if u == v == 1.0 else "p-k extended"
            out.append(({"family": family, "c": c, "u": u, "v": v}, log_weight, value))
    for b in ctx.grid.get("b", (0.5, 1.0)):
        for v in ctx.grid.get("v", (1.0, 0.5)):
            def log_weight(t, b=b, v=v):
                tv = t ** v
                return -(tv + b ** v / tv) / v

            def value(order, b=b, v=v):
                params = VExtParams(b, v)
                return lambda y: v_ext_cz_gamma_deriv(order, y, params)

            out.append(({"family": "v-extended", "b": b, "v": v}, log_weight, value))
    return out


@register("thm_7_1_to_7_6_chains", "Thms 7.1-7.6 (Eqs 7.3-7.11)",
          "Type-I chains for the p-k extended, ordinary and v-extended CZ gamma and "
          "their even derivatives (N in {0, 2}); generic quadrature of the moments "
          "agrees with the single-gamma reduced path within 1e-8, and the chains are "
          "ordered and m-monotone.")
def _thm_7(ctx: CheckContext) -> None:
    for order in ctx.grid.ints("N", (0, 2)):
        if order % 2:
            ctx.error({"N": order}, ArgumentError("derivative chains need an even order"))
            continue
        for label, log_weight, value in _gamma_families(ctx):
            for weights, x in _setups(ctx):
                generic, reduced = _gamma_family_oracles(
                    weights, x, order, log_weight, value(order))
                _run_chain_family(ctx, {**label, "N": order, "x": list(x)},
                                  weights, generic, reduced)


# ---------------------------------------------------------------------------
# Young and Minkowski

_MINKOWSKI_PAIRS = (
    ("sin(3t)", lambda t: math.sin(3 * t), "t**2", lambda t: t * t),
    ("exp(-t)", lambda t: math.exp(-t), "-cos(t)", lambda t: -math.cos(t)),
    ("t", lambda t: t, "0", lambda t: 0.0),
    ("1", lambda t: 1.0, "t - 1/2", lambda t: t - 0.5),
)


@register("appendix_A2_young_minkowski", "Appendix A.2 (A.2.1-A.2.2)",
          "Young's inequality on random (u, v, a) and Minkowski's inequality for fixed "
          "function pairs on [0, 2], exponents 1, 1.5, 2, 3.")
def _appendix_a2(ctx: CheckContext) -> None:
    rng = ctx.rng
    for _ in range(4 * ctx.grid.sample_count):
        u, v = rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)
        alpha = rng.uniform(0.05, 0.95)
        pt = {"u": u, "v": v, "alpha": alpha}
        res = ctx.attempt(pt, lambda: young_check(u, v, alpha, 1.0 - alpha))
        if res is not None:
            ctx.record(pt, res / max(1.0, u, v))
    for fname, f, gname, g in _MINKOWSKI_PAIRS:
        for q in (1.0, 1.5, 2.0, 3.0):
            pt = {"f": fname, "g": gname, "q": q}
            res = ctx.attempt(pt, lambda: minkowski_check(f, g, q, 0.0, 2.0))
            if res is not None:
                ctx.record(pt, res)
