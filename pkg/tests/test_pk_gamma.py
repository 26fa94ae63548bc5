from __future__ import annotations

import math

import pytest

from conftest import cases, rel_err
from pkspecial.errors import ArgumentError, DomainError
from pkspecial.numerics import EULER_GAMMA, finite_difference
from pkspecial.pk_gamma import (
    PKParams,
    check_identity_1_3,
    check_identity_1_5,
    check_identity_1_6,
    check_weierstrass_4_4,
    digamma_reflection_forms,
    pk_digamma,
    pk_digamma_result,
    pk_gamma,
    pk_gamma_quadrature,
    pk_polygamma,
    reflection_negative_ratio,
    weierstrass_product,
)

GRID = (0.5, 1.0, 2.0, 3.0)


@cases("pk_gamma")
def test_pk_gamma_matches_integral_oracle(row):
    x, p, k, expected = row
    assert rel_err(pk_gamma(x, PKParams(p, k)), expected) < 1e-13


@pytest.mark.parametrize("x,p,k,expected", [(2, 2, 1, 4.0), (1, 1, 1, 1.0), (2, 2, 2, 1.0)])
def test_pk_gamma_hand_values(x, p, k, expected):
    assert pk_gamma(x, PKParams(p, k)) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("x", [0.3, 1.0, 2.5, 7.0])
@pytest.mark.parametrize("p", GRID)
@pytest.mark.parametrize("k", GRID)
def test_closed_form_matches_quadrature(x, p, k):
    params = PKParams(p, k)
    res = pk_gamma_quadrature(x, params)
    assert res.converged
    assert rel_err(res.value, pk_gamma(x, params)) < 1e-8


@pytest.mark.parametrize("bad", [dict(p=0.0, k=1.0), dict(p=1.0, k=-1.0), dict(p=math.nan, k=1.0)])
def test_params_domain(bad):
    with pytest.raises(DomainError):
        PKParams(**bad)


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_pk_gamma_domain(x):
    with pytest.raises(DomainError, match="x must be > 0"):
        pk_gamma(x, PKParams())


@cases("pk_digamma")
def test_digamma_oracle(row):
    x, p, k, expected = row
    assert pk_digamma(x, PKParams(p, k)) == pytest.approx(expected, abs=1e-12)


def test_digamma_hand_values():
    assert pk_digamma(1.0, PKParams(1, 1)) == pytest.approx(-EULER_GAMMA, abs=1e-13)
    assert pk_digamma(1.0, PKParams(math.e, 1)) == pytest.approx(1 - EULER_GAMMA, abs=1e-13)


def test_digamma_difference_independent_of_p():
    a = pk_digamma(3.0, PKParams(5, 2)) - pk_digamma(1.0, PKParams(5, 2))
    b = pk_digamma(3.0, PKParams(2, 2)) - pk_digamma(1.0, PKParams(2, 2))
    assert a == pytest.approx(b, abs=1e-12)


def test_digamma_error_estimate_is_honest():
    res = pk_digamma_result(0.7, PKParams(1.5, 2.0))
    assert res.converged and res.error_estimate < 1e-12


@cases("pk_polygamma")
def test_polygamma_oracle(row):
    n, x, p, k, expected = row
    assert rel_err(pk_polygamma(n, x, PKParams(p, k)), expected) < 1e-11


def test_polygamma_p_independent():
    assert pk_polygamma(1, 1.0, PKParams(7, 1)) == pytest.approx(pk_polygamma(1, 1.0, PKParams(1, 1)),
                                                                  rel=1e-14)


def test_polygamma_matches_finite_difference_of_digamma():
    params = PKParams(1, 1)
    fd = finite_difference(lambda x: pk_digamma(x, params), 1.0, 2, 1e-3)
    assert pk_polygamma(1, 1.0, params) == pytest.approx(math.pi ** 2 / 6, rel=1e-12)
    assert rel_err(pk_polygamma(2, 1.0, params), fd) < 1e-5


@pytest.mark.parametrize("n", [0, -1, 1.5])
def test_polygamma_order(n):
    with pytest.raises(ArgumentError):
        pk_polygamma(n, 1.0, PKParams())


class TestIdentities:
    @pytest.mark.parametrize("p", GRID)
    @pytest.mark.parametrize("k", GRID)
    def test_special_value(self, p, k):
        assert check_identity_1_3(PKParams(p, k)) < 1e-10

    @pytest.mark.parametrize("p,k", [(1, 1), (2, 3), (0.5, 2), (3, 0.5)])
    def test_reflection_symmetry_point(self, p, k):
        assert check_identity_1_5(k / 2, PKParams(p, k)) < 1e-10
        assert pk_gamma(k / 2, PKParams(p, k)) ** 2 == pytest.approx(p * math.pi / k ** 2, rel=1e-12)

    def test_reflection_outside_strip(self):
        with pytest.raises(DomainError):
            check_identity_1_5(2.0, PKParams(1, 1))

    @pytest.mark.parametrize("m", [2, 3])
    def test_multiplication(self, m):
        assert check_identity_1_6(m, 0.7, PKParams(1.5, 1.3)) < 1e-8

    def test_weierstrass_convergence(self):
        assert abs(weierstrass_product(1.0, PKParams(1, 1), 100_000) - 1.0) < 1e-3
        assert check_weierstrass_4_4(1.0, PKParams(1, 1), 100_000) < 1e-3

    def test_weierstrass_prefactor_off_by_k(self):
        params = PKParams(2.0, 3.0)
        displayed = weierstrass_product(1.3, params, 200_000)
        consistent = weierstrass_product(1.3, params, 200_000, consistent=True)
        assert consistent * pk_gamma(1.3, params) == pytest.approx(1.0, abs=1e-4)
        assert displayed / consistent == pytest.approx(1 / 3, rel=1e-12)

    @pytest.mark.parametrize("x", [0.3, 0.7, 1.4])
    def test_negative_reflection_sign(self, x):
        assert reflection_negative_ratio(x, PKParams(1.5, 2.0)) == pytest.approx(-1.0, rel=1e-10)

    def test_digamma_reflection_difference_form(self):
        total, total_claim, diff, diff_exact = digamma_reflection_forms(0.3, PKParams(2.0, 1.0))
        assert diff == pytest.approx(diff_exact, abs=1e-10)
        assert abs(total - total_claim) > 1e-3
