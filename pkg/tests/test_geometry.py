"""Spatial geometry tests: nearest-satellite distance on a spherical shell,
nearest-base-station distance in a planar Poisson field, and the CDF of the
propagation-loss ratio between the two links.

The shell model places n_sats uniformly on a sphere of radius r_e + r_s
around the Earth's center; the brute-force oracle for the ratio CDF
integrates the Rayleigh-void probability against the nearest-satellite
density directly.
"""

import math

import numpy as np
import pytest
import scipy.stats

from satoffload import (
    DomainError,
    NetworkConfig,
    bs_nearest_cdf,
    dist_ratio_cdf,
    integrate_finite,
    sample_bs_nearest,
    sample_sat_nearest,
    sat_nearest_cdf,
    sat_nearest_pdf,
)


def _brute_ratio_cdf(r, cfg, spec):
    """Independent route: quadrature of the void probability over the
    nearest-satellite density, no confluent-hypergeometric reduction."""
    if r <= 0.0:
        return 0.0
    x = r ** (-1.0 / cfg.eta)
    lo, hi = cfg.r_s, 2.0 * cfg.r_e + cfg.r_s
    val, _ = integrate_finite(
        lambda r0: np.exp(-math.pi * cfg.b_intensity * (x * r0) ** 2)
        * sat_nearest_pdf(r0, cfg), lo, hi, spec)
    return val


class TestNetworkConfig:
    def test_defaults(self, sparse_cfg):
        assert sparse_cfg.r_e == 6378.0
        assert sparse_cfg.p_bs_tx == 1.0
        assert sparse_cfg.eta == 3.0
        assert sparse_cfg.sigma == 4.47e-7
        assert sparse_cfg.shell_radius == 6878.0
        assert sparse_cfg.chord_area_coef == 4.0 * 6378.0 * 6878.0

    @pytest.mark.parametrize("kwargs", [
        {"r_s": 0.0}, {"n_sats": -1.0}, {"b_intensity": 0.0},
        {"p_sat_tx": -0.1}, {"eta": 2.0}, {"sigma": 0.0},
        {"u_intensity": -1.0},
    ])
    def test_invalid_rejected(self, kwargs):
        base = dict(r_s=500.0, n_sats=100.0, b_intensity=0.3, p_sat_tx=8.0)
        base.update(kwargs)
        with pytest.raises(DomainError):
            NetworkConfig(**base)

    def test_relaxed_corners_allowed(self):
        NetworkConfig(r_s=500.0, n_sats=100.0, b_intensity=0.3,
                      p_sat_tx=0.0, u_intensity=0.0)


class TestSatNearest:
    def test_pdf_normalized(self, sparse_cfg, spec):
        lo, hi = 500.0, 2.0 * 6378.0 + 500.0
        mass, _ = integrate_finite(
            lambda r: sat_nearest_pdf(r, sparse_cfg), lo, hi, spec)
        assert abs(mass - 1.0) <= 1e-9

    def test_cdf_endpoints_and_median_n1(self):
        cfg = NetworkConfig(r_s=500.0, n_sats=1.0, b_intensity=0.3, p_sat_tx=8.0)
        lo, hi = 500.0, 2.0 * 6378.0 + 500.0
        assert sat_nearest_cdf(lo, cfg) == 0.0
        assert abs(sat_nearest_cdf(hi, cfg) - 1.0) <= 1e-12
        # single satellite: chord-area fraction is uniform, median in closed form
        r_med = math.sqrt(lo ** 2 + cfg.chord_area_coef / 2.0)
        assert abs(sat_nearest_cdf(r_med, cfg) - 0.5) <= 1e-12

    def test_support_enforced(self, sparse_cfg):
        with pytest.raises(DomainError):
            sat_nearest_pdf(499.0, sparse_cfg)
        with pytest.raises(DomainError):
            sat_nearest_cdf(14000.0, sparse_cfg)

    def test_inverse_sampler_ks(self, sparse_cfg, rng):
        draws = sample_sat_nearest(sparse_cfg, rng, size=100_000)
        lo, hi = 500.0, 2.0 * 6378.0 + 500.0
        assert draws.min() >= lo and draws.max() <= hi
        stat = scipy.stats.kstest(
            draws, lambda r: np.vectorize(
                lambda ri: sat_nearest_cdf(ri, sparse_cfg))(r)).statistic
        assert stat < 0.006

    def test_spatial_vs_inverse_two_sample(self, rng):
        cfg = NetworkConfig(r_s=500.0, n_sats=100.0, b_intensity=0.3, p_sat_tx=8.0)
        a = sample_sat_nearest(cfg, rng, size=100_000, mode="inverse")
        b = sample_sat_nearest(cfg, rng, size=100_000, mode="spatial")
        stat = scipy.stats.ks_2samp(a, b).statistic
        assert stat < 0.009

    def test_spatial_needs_integer_count(self, rng):
        cfg = NetworkConfig(r_s=500.0, n_sats=99.5, b_intensity=0.3, p_sat_tx=8.0)
        with pytest.raises(DomainError):
            sample_sat_nearest(cfg, rng, size=10, mode="spatial")

    def test_unknown_mode(self, sparse_cfg, rng):
        with pytest.raises(DomainError):
            sample_sat_nearest(sparse_cfg, rng, size=10, mode="grid")


class TestBsNearest:
    def test_cdf_closed_form(self, sparse_cfg):
        b = sparse_cfg.b_intensity
        assert bs_nearest_cdf(0.0, sparse_cfg) == 0.0
        r = 1.0
        assert abs(bs_nearest_cdf(r, sparse_cfg)
                   - (1.0 - math.exp(-b * math.pi * r * r))) <= 1e-15

    def test_inverse_roundtrip(self, sparse_cfg):
        b = sparse_cfg.b_intensity
        for p in np.arange(0.1, 0.95, 0.1):
            r = math.sqrt(-math.log(1.0 - p) / (math.pi * b))
            assert abs(bs_nearest_cdf(r, sparse_cfg) - p) <= 1e-12

    def test_sampler_ks(self, sparse_cfg, rng):
        draws = sample_bs_nearest(sparse_cfg, rng, size=100_000)
        stat = scipy.stats.kstest(
            draws, lambda r: bs_nearest_cdf(r, sparse_cfg)).statistic
        assert stat < 0.006


class TestDistRatioCdf:
    def test_bounds_and_limits(self, sparse_cfg, spec):
        r = np.logspace(-2, 16, 60)
        v = dist_ratio_cdf(r, sparse_cfg, spec)
        assert np.all((v >= 0.0) & (v <= 1.0))
        assert dist_ratio_cdf(0.0, sparse_cfg, spec) == 0.0
        assert abs(dist_ratio_cdf(1e22, sparse_cfg, spec) - 1.0) <= 1e-6

    def test_nondecreasing_in_r(self, sparse_cfg, spec):
        r = np.logspace(4, 14, 120)
        v = dist_ratio_cdf(r, sparse_cfg, spec)
        assert np.all(np.diff(v) >= -1e-15)

    def test_single_satellite_brute_oracle(self, spec):
        cfg = NetworkConfig(r_s=500.0, n_sats=1.0, b_intensity=1e-6, p_sat_tx=8.0)
        for r in np.logspace(8, 12, 7):
            ref = _brute_ratio_cdf(r, cfg, spec)
            got = float(dist_ratio_cdf(r, cfg, spec))
            assert abs(got - ref) <= 1e-9, f"r={r}"

    def test_moderate_config_brute_oracle(self, spec):
        cfg = NetworkConfig(r_s=500.0, n_sats=50.0, b_intensity=0.3, p_sat_tx=8.0)
        for r in np.logspace(9, 13, 5):
            ref = _brute_ratio_cdf(r, cfg, spec)
            got = float(dist_ratio_cdf(r, cfg, spec))
            assert abs(got - ref) <= 1e-7, f"r={r}"

    def test_monotone_in_n_and_b(self, spec):
        r = 3e10
        vals_n = [float(dist_ratio_cdf(
            r, NetworkConfig(r_s=500.0, n_sats=n, b_intensity=0.3,
                             p_sat_tx=8.0), spec))
            for n in (10.0, 100.0, 1000.0, 10000.0)]
        assert all(b > a for a, b in zip(vals_n, vals_n[1:]))
        vals_b = [float(dist_ratio_cdf(
            r, NetworkConfig(r_s=500.0, n_sats=1000.0, b_intensity=b,
                             p_sat_tx=8.0), spec))
            for b in (0.1, 0.3, 1.0, 3.0)]
        assert all(b < a for a, b in zip(vals_b, vals_b[1:]))

    def test_negative_ratio_rejected(self, sparse_cfg, spec):
        with pytest.raises(DomainError):
            dist_ratio_cdf(-1.0, sparse_cfg, spec)
