"""Offload analysis for integrated LEO-satellite/terrestrial networks.

Closed-form engines for the probability that a user offloads to the
satellite tier, the probability that a satellite sits idle, and the
smallest constellation meeting an idle budget, each paired with an
independent Monte Carlo oracle built from exact samplers.
"""

from .capacity import (VORONOI_C, EmptyProbResult, empty_prob_approx,
                       empty_prob_exact, empty_probability,
                       offloaded_intensity)
from .channel import (ChannelState, ChannelTimeline, RayleighParams,
                      bs_power_cdf, default_timeline, load_timeline,
                      sample_bs_power, sample_sat_power, sat_power_pdf,
                      timeline_lookup)
from .errors import (ConfigError, DomainError, Infeasible, NoBracket,
                     NoExactMatch, NonConvergence, OutOfRange,
                     SatOffloadError)
from .geometry import (NetworkConfig, bs_nearest_cdf, dist_ratio_cdf,
                       sample_bs_nearest, sample_sat_nearest,
                       sat_nearest_cdf, sat_nearest_pdf)
from .numerics import (NumericDiagnostics, QuadratureSpec, bessel_i0,
                       bessel_i0e, cf_w, integrate_finite,
                       integrate_semi_infinite, kummer_ratio_series)
from .offload import (OffloadResult, fading_ratio_cdf, fading_ratio_pdf,
                      offload_probability)
from .planner import PlanResult, PlannerConfig, local_count, solve_plan
from .sim import SimConfig, SimEstimate, estimate_empty_fraction, estimate_ps

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SatOffloadError", "DomainError", "NonConvergence", "OutOfRange",
    "NoExactMatch", "NoBracket", "Infeasible", "ConfigError",
    "QuadratureSpec", "NumericDiagnostics", "integrate_finite",
    "integrate_semi_infinite", "bessel_i0", "bessel_i0e",
    "kummer_ratio_series", "cf_w",
    "ChannelState", "ChannelTimeline", "RayleighParams", "sat_power_pdf",
    "bs_power_cdf", "sample_sat_power", "sample_bs_power",
    "timeline_lookup", "load_timeline", "default_timeline",
    "NetworkConfig", "sat_nearest_pdf", "sat_nearest_cdf",
    "sample_sat_nearest", "bs_nearest_cdf", "sample_bs_nearest",
    "dist_ratio_cdf",
    "OffloadResult", "fading_ratio_pdf", "fading_ratio_cdf",
    "offload_probability",
    "VORONOI_C", "EmptyProbResult", "empty_prob_approx", "empty_prob_exact",
    "offloaded_intensity", "empty_probability",
    "PlannerConfig", "PlanResult", "solve_plan", "local_count",
    "SimConfig", "SimEstimate", "estimate_ps", "estimate_empty_fraction",
]
