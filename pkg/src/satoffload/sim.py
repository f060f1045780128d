"""Monte Carlo oracle for the offload probability and the idle fraction.

Built exclusively from the exact samplers, so it shares no numerics
with the analytic engine it validates.  Randomness comes from
counter-based Philox streams keyed by (seed, batch index): results are
bit-identical for a given SimConfig no matter how batches are scheduled,
and every batch is independent.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ._kernels import impl
from .capacity import VORONOI_C
from .channel import RayleighParams, sample_bs_power, sample_sat_power
from .errors import DomainError
from .geometry import sample_bs_nearest, sample_sat_nearest

__all__ = ["SimConfig", "SimEstimate", "estimate_ps", "estimate_empty_fraction"]


@dataclass(frozen=True)
class SimConfig:
    """Trial count, stream seed, sampling mode and batching granularity."""

    trials: int
    seed: int
    mode: str = "inverse-cdf"
    batch_size: int = 100_000

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.batch_size < 1:
            raise DomainError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.mode not in ("inverse-cdf", "spatial"):
            raise DomainError(
                f"mode must be 'inverse-cdf' or 'spatial', got {self.mode!r}")


@dataclass(frozen=True)
class SimEstimate:
    """Point estimate with its standard error and wall time."""

    estimate: float
    std_error: float
    trials: int
    elapsed: float


def _batch_rng(seed, batch_index):
    return np.random.Generator(np.random.Philox(key=[seed, batch_index]))


def _batches(trials, batch_size):
    done = 0
    index = 0
    while done < trials:
        m = min(batch_size, trials - done)
        yield index, m
        done += m
        index += 1


def estimate_ps(cfg, cs, sc):
    """Fraction of trials where the satellite's received power wins.

    Per trial, in fixed draw order: nearest-satellite distance, nearest
    base-station distance, satellite fading power, terrestrial fading
    power; a hit is p_sat h_s R_s^-eta >= p_bs h_b R_b^-eta.  Ties count
    as satellite (a probability-zero event, fixed for determinism).
    """
    t0 = time.perf_counter()
    rp = RayleighParams(sigma=cfg.sigma)
    geo_mode = "inverse" if sc.mode == "inverse-cdf" else "spatial"
    hits = 0
    for bi, m in _batches(sc.trials, sc.batch_size):
        rng = _batch_rng(sc.seed, bi)
        r_s = sample_sat_nearest(cfg, rng, size=m, mode=geo_mode)
        r_b = sample_bs_nearest(cfg, rng, size=m)
        h_s = sample_sat_power(cs, rng, size=m)
        h_b = sample_bs_power(rp, rng, size=m)
        sat = cfg.p_sat_tx * h_s * r_s ** -cfg.eta
        bs = cfg.p_bs_tx * h_b * r_b ** -cfg.eta
        hits += int(np.count_nonzero(sat >= bs))
    p = hits / sc.trials
    se = np.sqrt(p * (1.0 - p) / sc.trials)
    return SimEstimate(estimate=p, std_error=float(se), trials=sc.trials,
                       elapsed=time.perf_counter() - t0)


def estimate_empty_fraction(cfg, cs, sc, u_s=None, c=VORONOI_C):
    """Mean fraction of satellites whose Voronoi cell holds no user.

    Each trial places n_sats uniform points on the shell and a Poisson
    number of users with mean c * u_s * (r_e+r_s)^2, the total load
    implied by the Beta(c, n-c) cell-area law (whose mean cell then
    holds u_s (r_e+r_s)^2 users), assigns users to nearest satellites,
    and records the empty fraction.  u_s defaults to the simulator's own
    offload estimate times u_intensity, keeping this oracle independent
    of the analytic engine.
    """
    t0 = time.perf_counter()
    n = int(cfg.n_sats)
    if n != cfg.n_sats or n < 2:
        raise DomainError(
            f"empty-fraction trials need an integral n_sats >= 2, got "
            f"{cfg.n_sats}")
    if u_s is None:
        u_s = estimate_ps(cfg, cs, sc).estimate * cfg.u_intensity
    if u_s < 0.0:
        raise DomainError(f"u_s must be >= 0, got {u_s}")
    lam = c * u_s * cfg.shell_radius ** 2
    fracs = np.empty(sc.trials)
    done = 0
    for bi, m in _batches(sc.trials, sc.batch_size):
        rng = _batch_rng(sc.seed, bi)
        for j in range(m):
            sats = rng.standard_normal((n, 3))
            sats /= np.linalg.norm(sats, axis=1, keepdims=True)
            n_users = int(rng.poisson(lam))
            users = rng.standard_normal((n_users, 3))
            if n_users:
                users /= np.linalg.norm(users, axis=1, keepdims=True)
                occupied = int(impl.count_occupied(sats, users))
            else:
                occupied = 0
            fracs[done + j] = 1.0 - occupied / n
        done += m
    est = float(fracs.mean())
    se = float(fracs.std(ddof=1) / np.sqrt(sc.trials)) if sc.trials > 1 else 0.0
    return SimEstimate(estimate=est, std_error=se, trials=sc.trials,
                       elapsed=time.perf_counter() - t0)
