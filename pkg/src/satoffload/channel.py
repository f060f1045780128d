"""Fading-power models for the two link types.

Satellite link: a two-state mixture.  In the good state the power
follows a Rician law K e^{-K(h+1)} I0(2K sqrt(h)), which is exactly a
noncentral chi-square with 2 degrees of freedom and noncentrality 2K,
scaled by 1/(2K) (see docs/channel_sampling.md).  In the bad state the
power is Suzuki: exponential with a dB-lognormal mean h0.

Terrestrial link: Rayleigh, so the power is exponential with mean
2 sigma^2.

The satellite state depends on pass time t through a table of
(t, p_f, k, mu_db, sigma_db) rows shipped with the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import ConfigError, DomainError, NoExactMatch, OutOfRange
from .numerics import bessel_i0e, integrate_semi_infinite

__all__ = [
    "ChannelState",
    "ChannelTimeline",
    "RayleighParams",
    "sat_power_pdf",
    "bs_power_cdf",
    "sample_sat_power",
    "sample_bs_power",
    "timeline_lookup",
    "load_timeline",
    "default_timeline",
]

_LN10_OVER_10 = np.log(10.0) / 10.0

# Gauss-Hermite rule for the lognormal mixing integral; 80 nodes give
# machine precision for every shipped sigma_db >= 0.3
_GH_Y, _GH_W = np.polynomial.hermite.hermgauss(80)

# below this shadowing spread the Gauss-Hermite substitution degenerates
SIGMA_DB_QUAD_FLOOR = 0.3

_TIMELINE_RESOURCE = "channel_timeline_500km.toml"


@dataclass(frozen=True)
class ChannelState:
    """Satellite-channel parameters at one pass time.

    t: seconds into the pass.
    p_f: probability of the bad (shadowed) state.
    k: Rice factor of the good state, > 0.
    mu_db, sigma_db: dB mean and spread of the lognormal shadowing power.
    """

    t: float
    p_f: float
    k: float
    mu_db: float
    sigma_db: float

    def __post_init__(self):
        if not 0.0 <= self.p_f <= 1.0:
            raise DomainError(f"p_f must be in [0, 1], got {self.p_f}")
        if not self.k > 0.0:
            raise DomainError(f"rice factor k must be > 0, got {self.k}")
        if self.sigma_db < 0.0:
            raise DomainError(f"sigma_db must be >= 0, got {self.sigma_db}")


@dataclass(frozen=True)
class ChannelTimeline:
    """Ordered channel states over a pass; lookup policy is fixed at build.

    interpolation_mode: "exact" serves only the listed t values,
    "linear" interpolates each parameter componentwise between
    neighbours.
    """

    states: tuple
    interpolation_mode: str = "exact"

    def __post_init__(self):
        if len(self.states) == 0:
            raise DomainError("timeline needs at least one state")
        ts = [s.t for s in self.states]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("timeline t values must be strictly increasing")
        if self.interpolation_mode not in ("exact", "linear"):
            raise DomainError(
                f"interpolation_mode must be 'exact' or 'linear', got "
                f"{self.interpolation_mode!r}")


@dataclass(frozen=True)
class RayleighParams:
    """Terrestrial Rayleigh fading; power is exponential with mean 2 sigma^2."""

    sigma: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")


def shadow_means(cs, n_nodes=None):
    """Gauss-Hermite nodes mapped to lognormal mean powers 10^((mu+sqrt2*s*y)/10).

    Returns (h0_nodes, weights/sqrt(pi)); a weighted sum over these
    evaluates E_h0[...] for the bad-state mixture.
    """
    if n_nodes is None:
        y, w = _GH_Y, _GH_W
    else:
        y, w = np.polynomial.hermite.hermgauss(n_nodes)
    h0 = 10.0 ** ((cs.mu_db + np.sqrt(2.0) * cs.sigma_db * y) / 10.0)
    return h0, w / np.sqrt(np.pi)


def _good_pdf(h, k):
    # K e^{-K(h+1)} I0(2K sqrt(h)) with the I0 exponential factored out,
    # so nothing overflows even for large K*h
    rh = np.sqrt(h)
    return k * bessel_i0e(2.0 * k * rh) * np.exp(-k * (rh - 1.0) ** 2)


def _bad_pdf(h, cs, spec):
    if cs.sigma_db == 0.0:
        h0 = 10.0 ** (cs.mu_db / 10.0)
        return np.exp(-h / h0) / h0
    if cs.sigma_db >= SIGMA_DB_QUAD_FLOOR:
        h0, w = shadow_means(cs)
        return (np.exp(-np.multiply.outer(h, 1.0 / h0)) / h0) @ w
    # narrow shadowing: integrate the lognormal mixture directly in h0
    scale = 10.0 ** (cs.mu_db / 10.0)
    coef = 10.0 / (np.log(10.0) * cs.sigma_db * np.sqrt(2.0 * np.pi))

    def mixture(hi):
        def f(h0):
            z = (10.0 * np.log10(h0) - cs.mu_db) / cs.sigma_db
            return coef / h0 * np.exp(-0.5 * z * z) * np.exp(-hi / h0) / h0

        val, _ = integrate_semi_infinite(f, 0.0, spec, scale=scale)
        return val

    flat = np.atleast_1d(h).ravel()
    out = np.array([mixture(float(hi)) for hi in flat])
    return out.reshape(np.shape(h))


def sat_power_pdf(h, cs, spec):
    """Density of the satellite fading power at h >= 0.

    Mixture (1-p_f) * Rician + p_f * Suzuki.  The Suzuki lognormal
    mixing integral uses Gauss-Hermite after substituting
    y = (10 log10 h0 - mu) / (sqrt(2) sigma), switching to direct
    quadrature over h0 when sigma_db < 0.3 where that substitution
    loses its spread (and, at exactly 0, to the degenerate exponential).
    Accepts a scalar or ndarray; raises DomainError for h < 0.
    """
    arr = np.asarray(h, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("fading power h must be >= 0")
    out = np.zeros(arr.shape)
    if cs.p_f < 1.0:
        out += (1.0 - cs.p_f) * _good_pdf(arr, cs.k)
    if cs.p_f > 0.0:
        out += cs.p_f * _bad_pdf(arr, cs, spec)
    if arr.ndim == 0:
        return float(out)
    return out


def bs_power_cdf(h, rp):
    """CDF 1 - e^{-h/(2 sigma^2)} of the terrestrial fading power."""
    arr = np.asarray(h, dtype=np.float64)
    if np.any(arr < 0.0):
        raise DomainError("fading power h must be >= 0")
    out = -np.expm1(-arr / (2.0 * rp.sigma * rp.sigma))
    if arr.ndim == 0:
        return float(out)
    return out


def sample_sat_power(cs, rng, size=None):
    """Exact draws of the satellite fading power.

    Good state: ((Z1 + sqrt(2K))^2 + Z2^2) / (2K), the scaled noncentral
    chi-square matching the Rician density.  Bad state: -h0 ln(u) with
    h0 = 10^((mu + sigma*Z)/10).  All streams are drawn for every
    sample regardless of the state mix, so a fixed seed yields the same
    draws for any p_f.  size=None returns a scalar.
    """
    m = 1 if size is None else int(size)
    bad = rng.random(m) < cs.p_f
    z1 = rng.standard_normal(m)
    z2 = rng.standard_normal(m)
    zs = rng.standard_normal(m)
    u = 1.0 - rng.random(m)  # in (0, 1]: keeps log finite
    s = np.sqrt(2.0 * cs.k)
    good = ((z1 + s) ** 2 + z2 ** 2) / (2.0 * cs.k)
    h0 = 10.0 ** ((cs.mu_db + cs.sigma_db * zs) / 10.0)
    out = np.where(bad, -h0 * np.log(u), good)
    if size is None:
        return float(out[0])
    return out


def sample_bs_power(rp, rng, size=None):
    """Exact draws of the terrestrial fading power: -2 sigma^2 ln(u)."""
    m = 1 if size is None else int(size)
    u = 1.0 - rng.random(m)
    out = -2.0 * rp.sigma * rp.sigma * np.log(u)
    if size is None:
        return float(out[0])
    return out


def timeline_lookup(tl, t):
    """Channel state at pass time t under the timeline's lookup policy.

    Exact mode requires t to match a listed row (tolerance 1e-9 s) and
    raises NoExactMatch otherwise.  Linear mode interpolates each
    parameter and raises OutOfRange outside [first.t, last.t].
    """
    t = float(t)
    ts = np.array([s.t for s in tl.states])
    if tl.interpolation_mode == "exact":
        idx = np.flatnonzero(np.abs(ts - t) <= 1e-9)
        if idx.size == 0:
            raise NoExactMatch(
                f"t={t} not in timeline rows {ts.tolist()} and interpolation "
                f"is off")
        return tl.states[int(idx[0])]
    if not ts[0] <= t <= ts[-1]:
        raise OutOfRange(f"t={t} outside timeline span [{ts[0]}, {ts[-1]}]")
    fields = {}
    for name in ("p_f", "k", "mu_db", "sigma_db"):
        vals = np.array([getattr(s, name) for s in tl.states])
        fields[name] = float(np.interp(t, ts, vals))
    return ChannelState(t=t, **fields)


def _timeline_from_dict(doc, interpolation_mode):
    try:
        rows = doc["states"]
    except KeyError:
        raise ConfigError("timeline file needs a [[states]] array") from None
    states = []
    for i, row in enumerate(rows):
        extra = set(row) - {"t", "p_f", "k", "mu_db", "sigma_db"}
        if extra:
            raise ConfigError(
                f"unknown keys {sorted(extra)} in timeline state {i}")
        try:
            states.append(ChannelState(
                t=float(row["t"]), p_f=float(row["p_f"]), k=float(row["k"]),
                mu_db=float(row["mu_db"]), sigma_db=float(row["sigma_db"])))
        except KeyError as e:
            raise ConfigError(f"timeline state {i} missing key {e}") from None
    try:
        return ChannelTimeline(states=tuple(states),
                               interpolation_mode=interpolation_mode)
    except DomainError as e:
        raise ConfigError(str(e)) from None


def load_timeline(path, interpolation_mode="exact"):
    """Timeline from a TOML file holding [[states]] rows (t, p_f, k, mu_db, sigma_db)."""
    try:
        import tomllib
    except ImportError:  # python < 3.11
        import tomli as tomllib
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    return _timeline_from_dict(doc, interpolation_mode)


def default_timeline(interpolation_mode="exact"):
    """The shipped 500 km pass table (six states, t = 0..130 s)."""
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib
    src = resources.files("satoffload").joinpath("data").joinpath(
        _TIMELINE_RESOURCE)
    doc = tomllib.loads(src.read_text())
    return _timeline_from_dict(doc, interpolation_mode)
