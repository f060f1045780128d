"""Numeric kernel tests: adaptive quadrature, Bessel I0, the Kummer ratio
series, and the associated continued fraction.

Reference values come from closed forms, scipy.special, or mpmath evaluated
at 30 significant digits; the two confluent-hypergeometric routes (power
series vs continued fraction) are checked against each other as well.
"""

import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sps

from satoffload import (
    DomainError,
    NonConvergence,
    QuadratureSpec,
    bessel_i0,
    bessel_i0e,
    cf_w,
    integrate_finite,
    integrate_semi_infinite,
    kummer_ratio_series,
)

mp.mp.dps = 30


def _mp_ratio(n, d):
    """exp(-d) * M(n, n+1, d) == M(1, n+1, -d), high-precision reference."""
    return float(mp.hyp1f1(1, n + 1, -d))


class TestQuadratureSpec:
    def test_defaults(self, spec):
        assert spec.rel_tol == 1e-8
        assert spec.series_max_terms == 500
        assert spec.cf_max_iters == 10000

    @pytest.mark.parametrize("kwargs", [
        {"rel_tol": 0.0},
        {"abs_tol": -1e-12},
        {"series_term_tol": 0.0},
        {"max_subdivisions": 0},
        {"series_max_terms": 0},
        {"cf_max_iters": 0},
    ])
    def test_invalid_settings_rejected(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSpec(**kwargs)


class TestIntegrateFinite:
    def test_constant(self, spec):
        val, diag = integrate_finite(lambda x: np.ones_like(x), 0.0, 1.0, spec)
        assert abs(val - 1.0) <= 1e-12
        assert diag.integrand_evals >= 22

    def test_gaussian_half_mass(self, spec):
        val, _ = integrate_finite(lambda x: np.exp(-x * x), 0.0, 6.0, spec)
        assert abs(val - math.sqrt(math.pi) / 2.0) <= 1e-10

    def test_beta_integral(self, spec):
        # B(3.6, 16.4) = Gamma(3.6)Gamma(16.4)/Gamma(20)
        a, b = 3.6, 16.4
        ref = math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
        val, _ = integrate_finite(
            lambda x: x ** (a - 1.0) * (1.0 - x) ** (b - 1.0), 0.0, 1.0, spec)
        assert abs(val - ref) / ref <= 1e-9

    def test_error_estimate_honest(self, spec):
        val, diag = integrate_finite(lambda x: np.cos(x), 0.0, 10.0, spec)
        assert abs(val - math.sin(10.0)) <= max(
            spec.abs_tol, 10.0 * spec.rel_tol * abs(val)) + 1e-12
        assert diag.est_abs_error >= 0.0

    def test_bad_bounds(self, spec):
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 1.0, 1.0, spec)
        with pytest.raises(DomainError):
            integrate_finite(lambda x: x, 2.0, 1.0, spec)

    def test_subdivision_cap(self):
        tight = QuadratureSpec(max_subdivisions=2)
        needle = lambda x: 1.0 / (1e-12 + (x - 0.3141) ** 2)
        with pytest.raises(NonConvergence):
            integrate_finite(needle, 0.0, 1.0, tight)


class TestIntegrateSemiInfinite:
    def test_exponential(self, spec):
        val, _ = integrate_semi_infinite(lambda x: np.exp(-x), 0.0, spec, 1.0)
        assert abs(val - 1.0) <= 1e-10

    def test_lorentzian_tail(self, spec):
        val, _ = integrate_semi_infinite(
            lambda x: 1.0 / (1.0 + x) ** 2, 0.0, spec, 1.0)
        assert abs(val - 1.0) <= 1e-10

    def test_shifted_lower_bound_and_scale(self, spec):
        # int_2^inf x e^{-x} dx = 3 e^{-2}
        val, _ = integrate_semi_infinite(
            lambda x: x * np.exp(-x), 2.0, spec, 5.0)
        assert abs(val - 3.0 * math.exp(-2.0)) <= 1e-10

    def test_bad_scale(self, spec):
        with pytest.raises(DomainError):
            integrate_semi_infinite(lambda x: np.exp(-x), 0.0, spec, 0.0)


class TestBesselI0:
    def test_reference_points(self):
        assert abs(bessel_i0(1.0) - 1.2660658777520084) <= 1e-13
        assert abs(bessel_i0(10.0) - 2815.716628466254) / 2815.716628466254 <= 1e-13

    def test_against_scipy_grid(self):
        x = np.concatenate([np.linspace(0.0, 30.0, 301),
                            np.logspace(1.5, 5.0, 200)])
        mine = bessel_i0e(x)
        ref = sps.i0e(x)
        np.testing.assert_allclose(mine, ref, rtol=1e-12, atol=0.0)

    def test_no_overflow_up_to_700(self):
        v = bessel_i0(700.0)
        assert np.isfinite(v)
        # leading asymptotic term e^x / sqrt(2 pi x)
        assert abs(v - math.exp(700.0) / math.sqrt(2.0 * math.pi * 700.0)) / v < 1e-3

    def test_scalar_and_array_shapes(self):
        assert np.isscalar(bessel_i0e(2.0)) or np.ndim(bessel_i0e(2.0)) == 0
        out = bessel_i0e(np.array([[0.5, 1.0], [2.0, 3.0]]))
        assert out.shape == (2, 2)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            bessel_i0(-1.0)


class TestKummerRatioSeries:
    def test_closed_form_n1(self, spec):
        # n=1: exp(-d) M(1,2,d) = (1 - exp(-d))/d
        for d in (0.3, 2.0, 9.0):
            ref = (1.0 - math.exp(-d)) / d
            assert abs(kummer_ratio_series(1.0, d, spec) - ref) / ref <= 1e-12

    def test_zero_argument(self, spec):
        assert kummer_ratio_series(7.0, 0.0, spec) == 1.0

    @pytest.mark.parametrize("n,d", [
        (1.0, 2.0), (10.0, 5.0), (3.6, 50.0), (100.0, 3000.0),
        (2.0, 1e6), (5000.0, 1e-3), (750.0, 749.0),
    ])
    def test_against_mpmath(self, spec, n, d):
        ref = _mp_ratio(n, d)
        assert abs(kummer_ratio_series(n, d, spec) - ref) / ref <= 1e-11

    @pytest.mark.parametrize("n", [1.0, 2.5, 5.0, 40.0, 1000.0])
    def test_branch_switchover_boundary(self, spec, n):
        """Values straddling the series/asymptotic switchover stay accurate."""
        d0 = max(50.0 * n, 30.0)
        for d in (d0 * (1.0 - 1e-6), d0, d0 * (1.0 + 1e-6)):
            ref = _mp_ratio(n, d)
            assert abs(kummer_ratio_series(n, d, spec) - ref) / ref <= 1e-7

    def test_fractional_n_vs_quadrature(self, spec):
        # n int_0^1 x^{n-1} e^{d(x-1)} dx, direct adaptive quadrature route
        n, d = 3.6, 50.0
        direct, _ = integrate_finite(
            lambda x: np.exp(d * (x - 1.0)) * x ** (n - 1.0), 0.0, 1.0, spec)
        direct *= n
        assert abs(kummer_ratio_series(n, d, spec) - direct) / direct <= 1e-9

    def test_domain_errors(self, spec):
        with pytest.raises(DomainError):
            kummer_ratio_series(0.0, 1.0, spec)
        with pytest.raises(DomainError):
            kummer_ratio_series(2.0, -0.5, spec)

    def test_term_cap(self):
        tiny = QuadratureSpec(series_max_terms=2)
        with pytest.raises(NonConvergence):
            kummer_ratio_series(5.0, 4.5, tiny)


class TestContinuedFraction:
    @pytest.mark.parametrize("n,d", [(10.0, 5.0), (1.0, 40.0), (200.0, 3.0)])
    def test_identity_with_series(self, spec, n, d):
        w = cf_w(n, d, spec)
        lhs = 1.0 / (1.0 + d / w)
        rhs = kummer_ratio_series(n, d, spec)
        assert abs(lhs - rhs) / rhs <= 1e-9

    def test_zero_argument_closed_form(self, spec):
        assert abs(cf_w(12.0, 0.0, spec) - 13.0) <= 1e-9

    def test_domain_errors(self, spec):
        with pytest.raises(DomainError):
            cf_w(-1.0, 1.0, spec)
        with pytest.raises(DomainError):
            cf_w(1.0, -1.0, spec)

    def test_iteration_cap(self):
        tiny = QuadratureSpec(cf_max_iters=2)
        with pytest.raises(NonConvergence):
            cf_w(1.0, 1e6, tiny)
