"""Randomized invariants of the special functions and chains."""
from __future__ import annotations

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pkspecial import (
    CZParams,
    PKParams,
    WeightedExponents,
    check_multinomial_2_2,
    cz_gamma,
    ext_cz_gamma,
    holder_chain_sum,
    pk_beta,
    pk_beta_deriv,
    pk_digamma,
    pk_gamma,
    pk_polygamma,
    refined_amgm_chain,
)
from pkspecial.holder import enumerate_lattice
from pkspecial.verifier import GridSpec, Verdict, run_check

args = st.floats(0.05, 20.0)
deform = st.floats(0.2, 5.0)
FAST = settings(max_examples=40, deadline=None)


@FAST
@given(x=args, p=deform, k=deform)
def test_gamma_recurrence(x, p, k):
    params = PKParams(p, k)
    lhs = pk_gamma(x + k, params)
    assume(math.isfinite(lhs) and lhs < 1e250)
    assert math.isclose(lhs, p * x / k * pk_gamma(x, params), rel_tol=1e-12)


@FAST
@given(x=args, p=deform, k=deform)
def test_beta_functional_equation(x, p, k):
    params = PKParams(p, k)
    assert math.isclose(pk_beta(x + k, params) + pk_beta(x, params), p / x, rel_tol=1e-10)


@FAST
@given(x=args, p=deform, k=deform)
def test_beta_scaling(x, p, k):
    assert math.isclose(pk_beta(x, PKParams(p, k)), p / k * pk_beta(x / k, PKParams(1, 1)),
                        rel_tol=1e-10)


@FAST
@given(n=st.integers(0, 6), x=st.floats(0.1, 10.0), p=deform, k=deform)
def test_beta_sign_pattern(n, x, p, k):
    assert (-1) ** n * pk_beta_deriv(n, x, PKParams(p, k)) > 0


@FAST
@given(x=st.floats(0.1, 10.0), dx=st.floats(0.01, 2.0), p=deform, k=deform)
def test_beta_decreasing(x, dx, p, k):
    params = PKParams(p, k)
    assert pk_beta(x + dx, params) < pk_beta(x, params)


@FAST
@given(x=st.floats(0.1, 10.0), dx=st.floats(0.01, 2.0), p=deform, k=deform)
def test_digamma_increasing(x, dx, p, k):
    params = PKParams(p, k)
    assert pk_digamma(x + dx, params) > pk_digamma(x, params)
    assert pk_polygamma(1, x, params) > 0


@FAST
@given(x=st.floats(0.3, 6.0), c=st.floats(0.0, 3.0))
def test_ext_reduces_to_cz(x, c):
    assert math.isclose(ext_cz_gamma(x, CZParams(c, PKParams(1, 1))), cz_gamma(x, c), rel_tol=1e-9)


@FAST
@given(x=st.floats(0.3, 6.0), c=st.floats(0.0, 3.0), p=deform, k=st.floats(0.5, 3.0))
def test_ext_closed_reduction(x, c, p, k):
    # ext_cz(x; c, p, k) = p**(x/k) / k * cz(x/k, c)
    expected = p ** (x / k) / k * cz_gamma(x / k, c)
    assert math.isclose(ext_cz_gamma(x, CZParams(c, PKParams(p, k))), expected, rel_tol=1e-8)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 5), m=st.integers(1, 8))
def test_lattice_count(n, m):
    assert len(enumerate_lattice(n, m)) == math.comb(m + n - 1, n - 1)


@FAST
@given(data=st.data(), n=st.integers(2, 4), m=st.integers(1, 5))
def test_multinomial_identity(data, n, m):
    nu = data.draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    a = data.draw(st.lists(st.floats(0.05, 10.0), min_size=n, max_size=n))
    lhs = sum(w * x for w, x in zip(nu, a)) ** m
    assert check_multinomial_2_2(n, m, nu, a) <= 1e-12 * lhs


@FAST
@given(data=st.data(), n=st.integers(2, 5), m=st.integers(1, 30))
def test_amgm_chain_ordered(data, n, m):
    raw = data.draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    nu = [w / math.fsum(raw) for w in raw]
    nu[-1] = 1.0 - math.fsum(nu[:-1])
    a = data.draw(st.lists(st.floats(0.0, 50.0), min_size=n, max_size=n))
    chain, u = refined_amgm_chain(a, nu, m)
    assert chain.worst_margin >= -1e-12 * max(1.0, chain.upper)
    assert all(x >= y - 1e-12 * max(1.0, x) for x, y in zip(u, u[1:]))


@FAST
@given(data=st.data(), n=st.integers(2, 3), m=st.integers(2, 4), rows=st.integers(1, 15))
def test_holder_sum_chain_ordered(data, n, m, rows):
    weights = data.draw(st.lists(st.floats(0.1, 1.0), min_size=n, max_size=n))
    seed = data.draw(st.integers(0, 2 ** 32 - 1))
    Q = np.random.default_rng(seed).uniform(0.01, 5.0, (rows, n))
    chain = holder_chain_sum(WeightedExponents.from_weights(weights), m, Q)
    assert chain.worst_margin >= -1e-10 * max(1.0, chain.upper)


@settings(max_examples=10, deadline=None)
@given(p=st.lists(st.floats(0.5, 3.0), min_size=1, max_size=2),
       k=st.lists(st.floats(0.5, 3.0), min_size=1, max_size=2))
def test_verdict_consistent_with_violations(p, k):
    report = run_check("eq_4_13_reflection_dual", GridSpec(p=tuple(p), k=tuple(k)))
    assert (report.verdict is Verdict.FAIL) == bool(report.violations)
    assert report.violation_count >= len(report.violations)
