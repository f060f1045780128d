"""Probability that a user is served by the satellite tier.

Under strongest-mean-power association the user offloads when
p_sat h_sat R_sat^-eta >= p_bs h_bs R_bs^-eta, so

    P_s = integral_0^inf F_ratio((p_sat/p_bs) h) f(h) dh,

with F_ratio the distance-ratio CDF from geometry and f the density of
the fading-power ratio h_sat/h_bs.  Everything is integrated in the
scaled variable g = 2 sigma^2 h, whose density is free of sigma and has
its mass at O(1); sigma re-enters only through the CDF argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import impl
from .channel import shadow_means
from .errors import DomainError, NonConvergence
from .geometry import dist_ratio_cdf
from .numerics import NumericDiagnostics, integrate_semi_infinite

__all__ = [
    "OffloadResult",
    "fading_ratio_pdf",
    "fading_ratio_cdf",
    "offload_probability",
]


@dataclass(frozen=True)
class OffloadResult:
    """Offload probability with the quadrature's own error estimate."""

    p_s: float
    est_error: float
    diagnostics: NumericDiagnostics


def _zseries(kind, g, k, spec):
    fn = impl.zseries_pdf_vec if kind == "pdf" else impl.zseries_cdf_vec
    out, terms = fn(np.ascontiguousarray(g), k,
                    spec.series_max_terms, spec.series_term_tol)
    if terms < 0:
        raise NonConvergence(
            f"fading-ratio series cap {spec.series_max_terms} hit at k={k}")
    return out, terms


def ratio_pdf_scaled(g, cs, spec, counter=None):
    """Density of g = 2 sigma^2 h, where h is the fading-power ratio.

    p_f * sum_i w_i h0_i/(h0_i+g)^2  +  (1-p_f) e^{-k} * (Rician-over-
    Rayleigh series); the shadowing sum runs over the Gauss-Hermite
    nodes of the lognormal law.  Vectorized over g.
    """
    g = np.asarray(g, dtype=np.float64)
    flat = g.reshape(-1)
    out = np.zeros(flat.shape)
    if cs.p_f > 0.0:
        h0, w = shadow_means(cs)
        out += cs.p_f * ((h0 / (h0 + flat[:, None]) ** 2) @ w)
    if cs.p_f < 1.0:
        series, terms = _zseries("pdf", flat, cs.k, spec)
        out += (1.0 - cs.p_f) * np.exp(-cs.k) * series
        if counter is not None:
            counter[0] = max(counter[0], terms)
    return out.reshape(g.shape)


def ratio_cdf_scaled(g, cs, spec, counter=None):
    """CDF companion of ratio_pdf_scaled, same mixture in integrated form."""
    g = np.asarray(g, dtype=np.float64)
    flat = g.reshape(-1)
    out = np.zeros(flat.shape)
    if cs.p_f > 0.0:
        h0, w = shadow_means(cs)
        out += cs.p_f * ((flat[:, None] / (h0 + flat[:, None])) @ w)
    if cs.p_f < 1.0:
        series, terms = _zseries("cdf", flat, cs.k, spec)
        out += (1.0 - cs.p_f) * np.exp(-cs.k) * series
        if counter is not None:
            counter[0] = max(counter[0], terms)
    return out.reshape(g.shape)


def fading_ratio_pdf(h, cs, rp, spec):
    """Density of the fading-power ratio h_sat/h_bs at h >= 0.

    Scalar or ndarray; equals 2 sigma^2 times the scaled density at
    g = 2 sigma^2 h.
    """
    arr = np.asarray(h, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("ratio h must be >= 0")
    two_s2 = 2.0 * rp.sigma * rp.sigma
    out = two_s2 * ratio_pdf_scaled(two_s2 * arr, cs, spec)
    if arr.ndim == 0:
        return float(out)
    return out


def fading_ratio_cdf(h, cs, rp, spec):
    """CDF of the fading-power ratio h_sat/h_bs; in [0, 1], nondecreasing."""
    arr = np.asarray(h, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("ratio h must be >= 0")
    two_s2 = 2.0 * rp.sigma * rp.sigma
    out = ratio_cdf_scaled(two_s2 * arr, cs, spec)
    if arr.ndim == 0:
        return float(out)
    return out


def offload_probability(cfg, cs, spec):
    """P_s for one deployment and one channel state.

    Integrates dist_ratio_cdf((p_sat/p_bs) h) against the fading-ratio
    density over h in [0, inf), in the g = 2 sigma^2 h variable.  The
    returned probability is clamped to [0, 1] against roundoff;
    est_error is the quadrature's absolute error estimate.
    """
    two_s2 = 2.0 * cfg.sigma * cfg.sigma
    ratio = cfg.p_sat_tx / (cfg.p_bs_tx * two_s2)
    counter = [0]

    def integrand(g):
        return dist_ratio_cdf(ratio * g, cfg, spec) * ratio_pdf_scaled(
            g, cs, spec, counter)

    val, diag = integrate_semi_infinite(integrand, 0.0, spec, scale=1.0)
    diag.series_terms_used = counter[0]
    return OffloadResult(p_s=min(1.0, max(0.0, val)),
                         est_error=diag.est_abs_error, diagnostics=diag)
