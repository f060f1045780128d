"""Nearest-node distance laws for the hybrid constellation/terrestrial layout.

Satellites form a binomial point process of n_sats points uniform on the
sphere of radius r_e + r_s; base stations form a planar Poisson process
of intensity b_intensity around the user, who sits at the tangent point.
Both laws have closed forms; the distance-ratio CDF needs the confluent
ratio from numerics and is the only nontrivial piece.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import impl
from .errors import DomainError, NonConvergence

__all__ = [
    "NetworkConfig",
    "sat_nearest_pdf",
    "sat_nearest_cdf",
    "sample_sat_nearest",
    "bs_nearest_cdf",
    "sample_bs_nearest",
    "dist_ratio_cdf",
]


@dataclass(frozen=True)
class NetworkConfig:
    """Deployment and link parameters shared by the analytic and simulated paths.

    Distances in km, intensities per km^2, transmit powers in watts.
    n_sats may be fractional: the planner treats the constellation size
    as a continuous unknown before rounding.  p_sat_tx = 0 and
    u_intensity = 0 are allowed as degenerate corners (satellite tier
    switched off / no load); everything else must be strictly positive,
    and a single path-loss exponent eta > 2 covers both links.
    """

    r_s: float
    n_sats: float
    b_intensity: float
    p_sat_tx: float
    u_intensity: float = 0.0
    r_e: float = 6378.0
    p_bs_tx: float = 1.0
    eta: float = 3.0
    sigma: float = 4.47e-7

    def __post_init__(self):
        for name in ("r_s", "n_sats", "b_intensity", "r_e", "p_bs_tx", "sigma"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.p_sat_tx < 0.0:
            raise DomainError(f"p_sat_tx must be >= 0, got {self.p_sat_tx}")
        if self.u_intensity < 0.0:
            raise DomainError(
                f"u_intensity must be >= 0, got {self.u_intensity}")
        if not self.eta > 2.0:
            raise DomainError(f"eta must be > 2, got {self.eta}")

    @property
    def shell_radius(self):
        """Orbital shell radius r_e + r_s."""
        return self.r_e + self.r_s

    @property
    def chord_area_coef(self):
        """4 r_e (r_e + r_s): the squared-distance span across the shell."""
        return 4.0 * self.r_e * self.shell_radius


def sat_nearest_pdf(r, cfg):
    """Density of the distance to the nearest satellite, on [r_s, 2 r_e + r_s].

    n (1 - (r^2 - r_s^2)/(4 r_e (r_e + r_s)))^(n-1) * r / (2 r_e (r_e + r_s)).
    """
    arr = np.asarray(r, dtype=np.float64)
    lo, hi = cfg.r_s, 2.0 * cfg.r_e + cfg.r_s
    if np.any(arr < lo) or np.any(arr > hi):
        raise DomainError(f"distance outside the shell support [{lo}, {hi}]")
    a = cfg.chord_area_coef
    base = 1.0 - (arr * arr - cfg.r_s ** 2) / a
    out = cfg.n_sats * base ** (cfg.n_sats - 1.0) * arr / (0.5 * a)
    if arr.ndim == 0:
        return float(out)
    return out


def sat_nearest_cdf(r, cfg):
    """CDF of the nearest-satellite distance: 1 - (1 - (r^2-r_s^2)/(4 r_e (r_e+r_s)))^n."""
    arr = np.asarray(r, dtype=np.float64)
    lo, hi = cfg.r_s, 2.0 * cfg.r_e + cfg.r_s
    if np.any(arr < lo) or np.any(arr > hi):
        raise DomainError(f"distance outside the shell support [{lo}, {hi}]")
    base = 1.0 - (arr * arr - cfg.r_s ** 2) / cfg.chord_area_coef
    out = 1.0 - base ** cfg.n_sats
    if arr.ndim == 0:
        return float(out)
    return out


def sample_sat_nearest(cfg, rng, size=None, mode="inverse"):
    """Draws of the nearest-satellite distance.

    "inverse" inverts the closed-form CDF.  "spatial" places n_sats
    uniform points on the shell and takes the minimum Euclidean distance
    to the user at (0, 0, r_e); it requires an integral n_sats and exists
    to cross-check the inverse route in distribution.  size=None returns
    a scalar.
    """
    m = 1 if size is None else int(size)
    if mode == "inverse":
        u = 1.0 - rng.random(m)  # (0, 1]: keeps the root argument >= 0
        out = np.sqrt(cfg.r_s ** 2
                      + cfg.chord_area_coef * (1.0 - u ** (1.0 / cfg.n_sats)))
    elif mode == "spatial":
        n = int(cfg.n_sats)
        if n != cfg.n_sats or n < 1:
            raise DomainError(
                f"spatial mode needs an integral n_sats >= 1, got {cfg.n_sats}")
        user = np.array([0.0, 0.0, cfg.r_e])
        out = np.empty(m)
        # cap the (chunk, n, 3) workspace at ~48 MB
        chunk = max(1, int(2_000_000 // n))
        for s in range(0, m, chunk):
            c = min(chunk, m - s)
            v = rng.standard_normal((c, n, 3))
            v *= cfg.shell_radius / np.linalg.norm(v, axis=2, keepdims=True)
            d = np.linalg.norm(v - user, axis=2)
            out[s:s + c] = d.min(axis=1)
    else:
        raise DomainError(f"mode must be 'inverse' or 'spatial', got {mode!r}")
    if size is None:
        return float(out[0])
    return out


def bs_nearest_cdf(r, cfg):
    """CDF 1 - e^{-B pi r^2} of the distance to the nearest base station."""
    arr = np.asarray(r, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("distance must be >= 0")
    out = -np.expm1(-cfg.b_intensity * np.pi * arr * arr)
    if arr.ndim == 0:
        return float(out)
    return out


def sample_bs_nearest(cfg, rng, size=None):
    """Exact nearest-base-station draws: sqrt(-ln(u) / (pi B))."""
    m = 1 if size is None else int(size)
    u = 1.0 - rng.random(m)
    out = np.sqrt(-np.log(u) / (np.pi * cfg.b_intensity))
    if size is None:
        return float(out[0])
    return out


def dist_ratio_cdf(r, cfg, spec):
    """CDF of the nearest-distance ratio R_sat / R_bs at ratio value r >= 0.

    e^{-pi B r^{-2/eta} r_s^2} * kummer_ratio(n, 4 pi B r^{-2/eta} r_e (r_e+r_s)),
    where the transmit powers cancel out of both factors.  r = 0 maps to
    0 by continuity.  Scalar or ndarray; nondecreasing in r.
    """
    arr = np.asarray(r, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("ratio must be >= 0")
    pre_coef = np.pi * cfg.b_intensity * cfg.r_s ** 2
    d_factor = cfg.chord_area_coef / cfg.r_s ** 2
    out, used = impl.dist_ratio_cdf_vec(
        np.ascontiguousarray(arr.ravel()), float(cfg.n_sats), pre_coef,
        d_factor, -2.0 / cfg.eta, spec.series_max_terms, spec.series_term_tol)
    if used < 0:
        raise NonConvergence(
            f"kummer ratio series cap {spec.series_max_terms} hit inside the "
            f"distance-ratio CDF")
    if arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)
