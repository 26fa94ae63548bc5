from __future__ import annotations

import math

import numpy as np
import pytest

from pkspecial.errors import ArgumentError, DomainError
from pkspecial.numerics import (
    QuadratureSettings,
    SeriesSettings,
    finite_difference,
    integrate_finite,
    integrate_semi_infinite,
    log_gamma_classic,
    sum_paired_series,
)

# Bessel closed form 2 K_{1/2}(2) = sqrt(pi) e**-2
CZ_HALF_ONE = math.sqrt(math.pi) * math.exp(-2.0)


class TestIntegrateFinite:
    def test_log_two(self):
        res = integrate_finite(lambda t: 1.0 / (1.0 + t), 0.0, 1.0)
        assert res.converged
        assert res.value == pytest.approx(math.log(2.0), abs=1e-13)
        assert res.error_estimate < 1e-10

    def test_inverse_sqrt_singularity(self):
        res = integrate_finite(lambda t: t ** -0.5, 0.0, 1.0, singular_exponent=0.5)
        assert res.value == pytest.approx(2.0, abs=1e-12)

    def test_beta_half_integral(self):
        res = integrate_finite(lambda t: t ** -0.5 / (1.0 + t), 0.0, 1.0, singular_exponent=0.5)
        assert res.value == pytest.approx(math.pi / 2, abs=1e-12)

    def test_bad_interval(self):
        with pytest.raises(ArgumentError):
            integrate_finite(lambda t: t, 1.0, 0.0)

    def test_bad_settings(self):
        with pytest.raises(ArgumentError):
            QuadratureSettings(abs_tol=-1.0)

    def test_tightening_stays_within_estimate(self):
        f = lambda t: np.exp(-t) * np.cos(3 * t)  # noqa: E731
        loose = integrate_finite(f, 0.0, 2.0, None, QuadratureSettings(1e-8, 1e-8))
        tight = integrate_finite(f, 0.0, 2.0, None, QuadratureSettings(1e-9, 1e-9))
        assert abs(tight.value - loose.value) <= loose.error_estimate


class TestIntegrateSemiInfinite:
    def test_exponential(self):
        assert integrate_semi_infinite(lambda t: np.exp(-t)).value == pytest.approx(1.0, abs=1e-12)

    def test_gamma_two(self):
        res = integrate_semi_infinite(lambda t: t * np.exp(-t))
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_regularized_singular(self):
        res = integrate_semi_infinite(lambda t: t ** -0.5 * np.exp(-t - 1.0 / t),
                                      singular_exponent=0.5)
        assert res.converged
        assert res.value == pytest.approx(CZ_HALF_ONE, rel=1e-10)


class TestPairedSeries:
    def test_log_two(self):
        res = sum_paired_series(lambda n: 1 / (2 * n + 1) - 1 / (2 * n + 2))
        assert res.converged
        assert res.value == pytest.approx(math.log(2.0), abs=1e-12)

    def test_half_pi(self):
        res = sum_paired_series(lambda n: 1 / (2 * n + 0.5) - 1 / (2 * n + 1.5))
        assert res.value == pytest.approx(math.pi / 2, abs=1e-12)

    def test_zero_terms(self):
        assert sum_paired_series(lambda n: 0.0).value == 0.0

    def test_error_estimate_bounds_actual(self):
        res = sum_paired_series(lambda n: 1 / (n + 1.0) ** 2, SeriesSettings(abs_tol=1e-10))
        assert abs(res.value - math.pi ** 2 / 6) <= res.error_estimate + 1e-15


class TestLogGamma:
    @pytest.mark.parametrize("x,expected", [(1.0, 0.0), (5.0, math.log(24.0)),
                                            (0.5, 0.5 * math.log(math.pi)),
                                            (0.01, math.lgamma(0.01)), (170.5, math.lgamma(170.5))])
    def test_values(self, x, expected):
        assert log_gamma_classic(x) == pytest.approx(expected, abs=1e-13 * max(1, abs(expected)))

    @pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            log_gamma_classic(x)


class TestFiniteDifference:
    def test_first_order(self):
        assert finite_difference(lambda x: x * x, 3.0, 1, 1e-5) == pytest.approx(6.0, abs=1e-8)

    def test_second_order(self):
        assert finite_difference(lambda x: x ** 3, 2.0, 2, 1e-4) == pytest.approx(12.0, abs=1e-5)

    def test_beta_derivative(self):
        from pkspecial import PKParams, pk_beta
        d = finite_difference(lambda x: pk_beta(x, PKParams(1, 1)), 1.0, 1, 1e-4)
        assert d == pytest.approx(-math.pi ** 2 / 12, abs=1e-7)

    def test_stencil_outside_domain(self):
        with pytest.raises(ArgumentError):
            finite_difference(math.log, 1e-6, 1, 1e-3, domain=(0.0, math.inf))

    def test_bad_order(self):
        with pytest.raises(ArgumentError):
            finite_difference(math.sin, 0.0, 5, 1e-3)
