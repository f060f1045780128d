"""Probability that a generic satellite's cell holds zero offloaded users.

Cell areas of the spherical Voronoi tessellation are approximated by a
Beta(c, n - c) law with the Voronoi shape constant c = 3.6, after
normalizing areas by (r_e + r_s)^2.  Averaging e^{-u_s a} over that law
gives the exact empty probability M(c, n, -u_s (r_e+r_s)^2); its
first-order Maclaurin truncation is the linear form 1 - c (r_e+r_s)^2
u_s / n, valid for n >= c (r_e+r_s)^2 u_s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NonConvergence
from .offload import offload_probability

__all__ = [
    "VORONOI_C",
    "EmptyProbResult",
    "empty_prob_approx",
    "empty_prob_exact",
    "offloaded_intensity",
    "empty_probability",
]

# shape constant of the 2-D Voronoi cell-area distribution
VORONOI_C = 3.6


@dataclass(frozen=True)
class EmptyProbResult:
    """Both empty-probability routes plus the regime flag they share.

    valid_regime is n >= c (r_e+r_s)^2 u_s; outside it the linear
    approximation can go negative and is reported unclamped.
    """

    p_empty_approx: float
    p_empty_exact: float
    u_s: float
    valid_regime: bool


def empty_prob_approx(n, u_s, cfg, c=VORONOI_C):
    """Linear form 1 - c (r_e+r_s)^2 u_s / n.

    May be negative when n is below the validity bound; the value is
    returned as-is so callers can see the violation.
    """
    if not n > 0.0:
        raise DomainError(f"n must be > 0, got {n}")
    if u_s < 0.0:
        raise DomainError(f"u_s must be >= 0, got {u_s}")
    return 1.0 - c * cfg.shell_radius ** 2 * u_s / n


def empty_prob_exact(n, u_s, cfg, spec, c=VORONOI_C):
    """Beta-mixture value M(c, n, -z) with z = u_s (r_e+r_s)^2.

    Evaluated through the reflection M(c, n, -z) = e^{-z} M(n-c, n, z),
    whose series has only positive terms; the partial sum is rescaled
    whenever it threatens the double range, so any in-regime z is safe.
    Requires n > c for the Beta parameters to be positive.
    """
    if not n > c:
        raise DomainError(f"n must exceed the Voronoi constant c={c}, got {n}")
    if u_s < 0.0:
        raise DomainError(f"u_s must be >= 0, got {u_s}")
    z = u_s * cfg.shell_radius ** 2
    if z == 0.0:
        return 1.0
    a = n - c
    t = 1.0
    s = 1.0
    shift = 0.0
    for k in range(1, spec.series_max_terms + 1):
        t *= (a + k - 1.0) * z / ((n + k - 1.0) * k)
        s += t
        if s > 1e280:
            s *= 1e-280
            t *= 1e-280
            shift += 280.0 * math.log(10.0)
        if t <= spec.series_term_tol * s and k > z:
            return math.exp(math.log(s) + shift - z)
    raise NonConvergence(
        f"empty-probability series cap {spec.series_max_terms} hit at "
        f"n={n}, z={z:.6g}")


def offloaded_intensity(cfg, cs, spec):
    """Intensity of users served by the satellite tier: P_s * u_intensity."""
    if cfg.u_intensity == 0.0:
        return 0.0
    return offload_probability(cfg, cs, spec).p_s * cfg.u_intensity


def empty_probability(cfg, cs, spec, c=VORONOI_C):
    """Both empty-probability forms at cfg.n_sats with the coupled intensity."""
    u_s = offloaded_intensity(cfg, cs, spec)
    n = cfg.n_sats
    return EmptyProbResult(
        p_empty_approx=empty_prob_approx(n, u_s, cfg, c),
        p_empty_exact=empty_prob_exact(n, u_s, cfg, spec, c),
        u_s=u_s,
        valid_regime=n >= c * cfg.shell_radius ** 2 * u_s)
