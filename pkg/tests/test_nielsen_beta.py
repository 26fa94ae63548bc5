from __future__ import annotations

import itertools
import math

import pytest

from conftest import cases, rel_err
from pkspecial.errors import DomainError, UnsupportedOrderError
from pkspecial.nielsen_beta import (
    BetaRepresentation,
    delta_n,
    pk_beta,
    pk_beta_abs,
    pk_beta_deriv,
    pk_beta_deriv_result,
    reflection_check,
    scaling_relation_check,
)
from pkspecial.numerics import QuadratureSettings, SeriesSettings, finite_difference
from pkspecial.pk_gamma import PKParams

PK = (0.5, 1.0, 2.0, 3.0)
ONE = PKParams(1.0, 1.0)


@cases("pk_beta_deriv")
@pytest.mark.parametrize("rep", list(BetaRepresentation))
def test_derivatives_match_digamma_oracle(row, rep):
    n, x, p, k, expected = row
    value = pk_beta_deriv(n, x, PKParams(p, k), rep)
    assert abs(value - expected) <= 1e-9 * max(1.0, abs(expected))


@pytest.mark.parametrize("x,p,k,expected", [
    (1, 1, 1, math.log(2)),
    (1, 2, 2, math.pi / 2),
    (2, 1, 1, 1 - math.log(2)),
])
def test_beta_hand_values(x, p, k, expected):
    assert pk_beta(x, PKParams(p, k)) == pytest.approx(expected, abs=1e-13)


def test_first_derivative_hand_values():
    assert pk_beta_deriv(1, 1.0, ONE) == pytest.approx(-math.pi ** 2 / 12, abs=1e-12)
    assert pk_beta_deriv(1, 2.0, ONE) == pytest.approx(-1 + math.pi ** 2 / 12, abs=1e-12)
    assert pk_beta_deriv(0, 1.0, ONE) == pytest.approx(math.log(2), abs=1e-13)


def test_abs_values():
    assert pk_beta_abs(1, 1.0, ONE) == pytest.approx(math.pi ** 2 / 12, abs=1e-12)
    assert pk_beta_abs(0, 1.0, ONE) == pytest.approx(math.log(2), abs=1e-13)
    assert pk_beta_abs(1, 2.0, ONE) == pytest.approx(1 - pk_beta_abs(1, 1.0, ONE), abs=1e-12)


@pytest.mark.parametrize("x", [0.2, 0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("p,k", list(itertools.product(PK, PK)))
def test_four_representations_agree(x, p, k):
    params = PKParams(p, k)
    values = [pk_beta(x, params, rep) for rep in BetaRepresentation]
    assert max(values) - min(values) <= 1e-9


@pytest.mark.parametrize("rep", list(BetaRepresentation))
def test_error_estimates_reported(rep):
    res = pk_beta_deriv_result(2, 0.7, PKParams(2.0, 0.5), rep)
    assert res.converged
    assert 0.0 <= res.error_estimate < 1e-8


def test_settings_tighten_series():
    loose = pk_beta_deriv_result(0, 1.0, ONE, settings=SeriesSettings(abs_tol=1e-6))
    tight = pk_beta_deriv_result(0, 1.0, ONE, settings=SeriesSettings(abs_tol=1e-13))
    assert loose.evaluations <= tight.evaluations
    assert abs(loose.value - math.log(2)) <= loose.error_estimate + 1e-15


def test_quadrature_settings_accepted():
    res = pk_beta_deriv_result(1, 1.0, ONE, BetaRepresentation.FINITE_INTEGRAL,
                               QuadratureSettings(1e-13, 1e-12))
    assert res.value == pytest.approx(-math.pi ** 2 / 12, abs=1e-11)


@pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
def test_domain(x):
    with pytest.raises(DomainError, match="x must be > 0"):
        pk_beta(x, ONE)


@pytest.mark.parametrize("n", [-1, 13, 1.5])
def test_order_cap(n):
    with pytest.raises(UnsupportedOrderError):
        pk_beta_deriv(n, 1.0, ONE)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("p,k", [(1, 1), (2, 0.5), (0.5, 3)])
def test_derivative_matches_finite_difference(n, x, p, k):
    params = PKParams(p, k)
    h = 1e-3 * x
    fd = finite_difference(lambda t: pk_beta(t, params), x, n, h, domain=(0, math.inf))
    assert rel_err(pk_beta_deriv(n, x, params), fd) < 1e-5


class TestDelta:
    @pytest.mark.parametrize("n,p", [(1, 2.0), (2, 0.5), (1, 0.5), (2, 2.0)])
    def test_limit_is_p(self, n, p):
        assert abs(delta_n(n, 1e-3, PKParams(p, 1.0)) - p) <= 0.01 * p

    def test_value_at_one(self):
        assert delta_n(1, 1.0, ONE) == pytest.approx(math.pi ** 2 / 12, abs=1e-12)

    def test_order_zero_rejected(self):
        with pytest.raises(UnsupportedOrderError):
            delta_n(0, 1.0, ONE)


class TestScaling:
    def test_ratio_p_over_k(self):
        ratio, second = scaling_relation_check(0, 1.7, PKParams(6, 2))
        assert ratio == pytest.approx(3.0, rel=1e-12)
        assert second == pytest.approx(3.0, rel=1e-12)

    def test_identity_case(self):
        assert scaling_relation_check(1, 0.4, ONE)[0] == pytest.approx(1.0, rel=1e-12)

    def test_second_probe_exposes_factor(self):
        assert scaling_relation_check(0, 2.0, PKParams(1, 2))[1] == pytest.approx(0.5, rel=1e-12)
        assert pk_beta(2.0, PKParams(1, 2)) == pytest.approx(math.log(2) / 2, abs=1e-13)


class TestReflection:
    @pytest.mark.parametrize("k", [0.5, 1.0, 3.0])
    def test_forms_coincide_at_p_equal_k(self, k):
        lhs, claimed, scaled = reflection_check(k / 2, PKParams(k, k))
        assert lhs == pytest.approx(math.pi, rel=1e-12)
        assert claimed == pytest.approx(math.pi, rel=1e-15)
        assert scaled == pytest.approx(math.pi, rel=1e-15)

    def test_scaled_form_holds(self):
        lhs, claimed, scaled = reflection_check(1.0, PKParams(1, 2))
        assert lhs == pytest.approx(math.pi / 2, abs=1e-12)
        assert scaled == pytest.approx(math.pi / 2, abs=1e-15)
        assert claimed == pytest.approx(math.pi / 4, abs=1e-15)

    def test_classic(self):
        lhs, _, _ = reflection_check(0.3, ONE)
        assert lhs == pytest.approx(math.pi / math.sin(0.3 * math.pi), rel=1e-12)

    def test_outside_strip(self):
        with pytest.raises(DomainError):
            reflection_check(1.5, ONE)
