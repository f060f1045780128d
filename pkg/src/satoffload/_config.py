"""TOML config ingestion for the CLI.

Sections [network], [channel], [planner], [sim]; keys are named exactly
after the corresponding dataclass fields and unknown keys are hard
errors, so a typo cannot silently fall back to a default.  [channel]
comes in two mutually exclusive shapes: an inline state (p_f, k, mu_db,
sigma_db and optional t) or a timeline reference (timeline = "default"
or a path, optional t and interpolation_mode).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .channel import ChannelState, ChannelTimeline, default_timeline, load_timeline
from .errors import ConfigError, DomainError
from .geometry import NetworkConfig
from .planner import PlannerConfig

try:
    import tomllib
except ImportError:  # python < 3.11
    import tomli as tomllib

_NETWORK_KEYS = {"r_s", "n_sats", "b_intensity", "u_intensity", "p_sat_tx",
                 "p_bs_tx", "r_e", "eta", "sigma"}
_CHANNEL_INLINE_KEYS = {"t", "p_f", "k", "mu_db", "sigma_db"}
_CHANNEL_TIMELINE_KEYS = {"timeline", "t", "interpolation_mode"}
_PLANNER_KEYS = {"epsilon", "c", "region_area", "n_bracket", "root_tol"}
_SIM_KEYS = {"trials", "seed", "mode", "batch_size"}


@dataclass(frozen=True)
class LoadedConfig:
    """Parsed config: the network always, the rest as the file provides."""

    network: NetworkConfig
    state: ChannelState       # inline channel, or None
    timeline: ChannelTimeline  # timeline channel, or None
    t: float                  # default pass time from the file, or None
    planner: PlannerConfig    # or None
    sim: dict                 # validated [sim] keys, possibly empty


def _float(section, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"[{section}] {key} must be a number, got {value!r}")
    return float(value)


def _int(section, key, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"[{section}] {key} must be an integer, got {value!r}")
    return value


def _check_keys(section, table, allowed, context=""):
    extra = set(table) - allowed
    if extra:
        raise ConfigError(
            f"unknown keys {sorted(extra)} in [{section}]{context}; "
            f"allowed: {sorted(allowed)}")


def _require(section, table, keys):
    missing = [k for k in keys if k not in table]
    if missing:
        raise ConfigError(f"[{section}] is missing required keys {missing}")


def _parse_network(table):
    _check_keys("network", table, _NETWORK_KEYS)
    _require("network", table, ["r_s", "n_sats", "b_intensity", "p_sat_tx"])
    kwargs = {k: _float("network", k, v) for k, v in table.items()}
    try:
        return NetworkConfig(**kwargs)
    except DomainError as e:
        raise ConfigError(f"[network]: {e}") from None


def _parse_channel(table, base_dir):
    if "timeline" in table:
        _check_keys("channel", table, _CHANNEL_TIMELINE_KEYS,
                    " (timeline form)")
        mode = table.get("interpolation_mode", "exact")
        if not isinstance(mode, str):
            raise ConfigError(
                f"[channel] interpolation_mode must be a string, got {mode!r}")
        ref = table["timeline"]
        if not isinstance(ref, str):
            raise ConfigError(
                f"[channel] timeline must be 'default' or a path, got {ref!r}")
        try:
            if ref == "default":
                tl = default_timeline(interpolation_mode=mode)
            else:
                path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
                tl = load_timeline(path, interpolation_mode=mode)
        except (DomainError, OSError) as e:
            raise ConfigError(f"[channel] timeline {ref!r}: {e}") from None
        t = (_float("channel", "t", table["t"]) if "t" in table else None)
        return None, tl, t
    _check_keys("channel", table, _CHANNEL_INLINE_KEYS, " (inline form)")
    _require("channel", table, ["p_f", "k", "mu_db", "sigma_db"])
    vals = {k: _float("channel", k, v) for k, v in table.items()}
    vals.setdefault("t", 0.0)
    try:
        state = ChannelState(**vals)
    except DomainError as e:
        raise ConfigError(f"[channel]: {e}") from None
    return state, None, state.t


def _parse_planner(table):
    _check_keys("planner", table, _PLANNER_KEYS)
    kwargs = {}
    for k, v in table.items():
        if k == "n_bracket":
            if (not isinstance(v, list) or len(v) != 2
                    or any(isinstance(x, bool) or not isinstance(x, (int, float))
                           for x in v)):
                raise ConfigError(
                    f"[planner] n_bracket must be [n_lo, n_hi], got {v!r}")
            kwargs[k] = (float(v[0]), float(v[1]))
        else:
            kwargs[k] = _float("planner", k, v)
    try:
        return PlannerConfig(**kwargs)
    except DomainError as e:
        raise ConfigError(f"[planner]: {e}") from None


def _parse_sim(table):
    _check_keys("sim", table, _SIM_KEYS)
    out = {}
    for k, v in table.items():
        if k == "mode":
            if v not in ("inverse-cdf", "spatial"):
                raise ConfigError(
                    f"[sim] mode must be 'inverse-cdf' or 'spatial', got {v!r}")
            out[k] = v
        else:
            out[k] = _int("sim", k, v)
    return out


def resolve_config_path(path):
    """The path as given, else relative to $SATOFFLOAD_CONFIG_DIR."""
    if os.path.exists(path):
        return path
    config_dir = os.environ.get("SATOFFLOAD_CONFIG_DIR")
    if config_dir:
        candidate = os.path.join(config_dir, path)
        if os.path.exists(candidate):
            return candidate
    raise ConfigError(f"config file not found: {path}")


def load_config(path):
    """Parse and validate a config file into a LoadedConfig."""
    path = resolve_config_path(path)
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"{path}: {e}") from None
    _check_keys("<top level>", doc, {"network", "channel", "planner", "sim"})
    for name in ("network", "channel", "planner", "sim"):
        if name in doc and not isinstance(doc[name], dict):
            raise ConfigError(f"[{name}] must be a section")
    if "network" not in doc:
        raise ConfigError("config needs a [network] section")
    network = _parse_network(doc["network"])
    state, timeline, t = (None, None, None)
    if "channel" in doc:
        state, timeline, t = _parse_channel(doc["channel"],
                                            os.path.dirname(os.path.abspath(path)))
    planner = _parse_planner(doc["planner"]) if "planner" in doc else None
    sim = _parse_sim(doc["sim"]) if "sim" in doc else {}
    return LoadedConfig(network=network, state=state, timeline=timeline,
                        t=t, planner=planner, sim=sim)
