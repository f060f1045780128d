"""Command-line interface: ps, sweep, plan, validate.

Outputs are deterministic for a given (config, seed, version): no wall
times or timestamps inside result files, fixed column order, fixed
float formatting.  Every file written gets a <output>.manifest.json
sidecar recording the config hash, command line, seed and tool version.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__
from ._config import load_config, resolve_config_path
from .channel import timeline_lookup
from .errors import (ConfigError, DomainError, Infeasible, NoBracket,
                     NoExactMatch, NonConvergence, OutOfRange)
from .numerics import QuadratureSpec
from .offload import offload_probability
from .planner import PlannerConfig, solve_plan
from .sim import SimConfig, estimate_ps

_SWEEP_PARAMS = {"t": None, "B": "b_intensity", "N": "n_sats", "r_s": "r_s",
                 "p_sat_tx": "p_sat_tx", "U": "u_intensity"}
_LOW_POWER_TRIALS = 10_000


def _fmt(x):
    return format(float(x), ".12g")


def _resolve_state(loaded, t_flag):
    if loaded.state is not None:
        if t_flag is not None:
            raise ConfigError(
                "--t needs a [channel] timeline; this config pins an inline "
                "state")
        return loaded.state
    if loaded.timeline is None:
        raise ConfigError("config has no [channel] section")
    t = t_flag if t_flag is not None else loaded.t
    if t is None:
        raise ConfigError("no pass time: give --t or set t in [channel]")
    return timeline_lookup(loaded.timeline, t)


def _write_manifest(output, config_path, argv, seed):
    with open(config_path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    payload = {
        "config_hash": f"sha256:{digest}",
        "command": "satoffload " + " ".join(argv),
        "seed": seed,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    with open(f"{output}.manifest.json", "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit(text, output, config_path, argv, seed):
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        _write_manifest(output, config_path, argv, seed)
    else:
        sys.stdout.write(text)


def _json_text(payload):
    return json.dumps(payload, indent=2) + "\n"


def _cmd_ps(args, argv):
    path = resolve_config_path(args.config)
    loaded = load_config(path)
    cs = _resolve_state(loaded, args.t)
    res = offload_probability(loaded.network, cs, QuadratureSpec())
    if args.format == "csv":
        text = ("t,p_s,est_error\n"
                f"{_fmt(cs.t)},{_fmt(res.p_s)},{_fmt(res.est_error)}\n")
    else:
        text = _json_text({
            "t": cs.t,
            "p_s": res.p_s,
            "est_error": res.est_error,
            "integrand_evals": res.diagnostics.integrand_evals,
            "series_terms_used": res.diagnostics.series_terms_used,
        })
    _emit(text, args.output, path, argv, None)
    return 0


def _eval_point(task):
    cfg, cs, spec = task
    res = offload_probability(cfg, cs, spec)
    return res.p_s, res.est_error


def _parse_vary(raw):
    grids = []
    for param, lo, hi, steps in raw:
        if param not in _SWEEP_PARAMS:
            raise ConfigError(
                f"unknown sweep parameter {param!r}; choose from "
                f"{sorted(_SWEEP_PARAMS)}")
        try:
            lo, hi = float(lo), float(hi)
            steps = int(steps)
        except ValueError:
            raise ConfigError(
                f"--vary {param} needs numeric LO HI and integer STEPS") from None
        if steps < 1:
            raise ConfigError(f"--vary {param}: STEPS must be >= 1")
        grids.append((param, np.linspace(lo, hi, steps)))
    return grids


def _cmd_sweep(args, argv):
    path = resolve_config_path(args.config)
    loaded = load_config(path)
    grids = _parse_vary(args.vary)
    spec = QuadratureSpec()
    tasks = []
    combos = list(itertools.product(*[g[1] for g in grids]))
    for combo in combos:
        cfg = loaded.network
        t_val = None
        for (param, _), value in zip(grids, combo):
            if param == "t":
                t_val = float(value)
            else:
                cfg = dataclasses.replace(
                    cfg, **{_SWEEP_PARAMS[param]: float(value)})
        tasks.append((cfg, _resolve_state(loaded, t_val), spec))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_eval_point, tasks))
    else:
        results = [_eval_point(task) for task in tasks]
    names = [g[0] for g in grids]
    if args.format == "json":
        rows = []
        for combo, (p_s, err) in zip(combos, results):
            row = {name: float(v) for name, v in zip(names, combo)}
            row.update(p_s=p_s, est_error=err)
            rows.append(row)
        text = _json_text(rows)
    else:
        lines = [",".join(names + ["p_s", "est_error"])]
        for combo, (p_s, err) in zip(combos, results):
            lines.append(",".join([_fmt(v) for v in combo]
                                  + [_fmt(p_s), _fmt(err)]))
        text = "\n".join(lines) + "\n"
    _emit(text, args.output, path, argv, None)
    return 0


def _cmd_plan(args, argv):
    path = resolve_config_path(args.config)
    loaded = load_config(path)
    cs = _resolve_state(loaded, None)
    pc = loaded.planner if loaded.planner is not None else PlannerConfig()
    if args.epsilon is not None:
        pc = dataclasses.replace(pc, epsilon=args.epsilon)
    if args.region_area is not None:
        pc = dataclasses.replace(pc, region_area=args.region_area)
    pr = solve_plan(loaded.network, cs, pc, QuadratureSpec())
    text = _json_text({
        "n_real": pr.n_real,
        "n_opt": pr.n_opt,
        "p_s_opt": pr.p_s_opt,
        "f_empty_at_n_opt": pr.f_empty_at_n_opt,
        "density": pr.density,
        "n_local": pr.n_local,
        "constraint_satisfied": pr.constraint_satisfied,
    })
    _emit(text, args.output, path, argv, None)
    return 0


def _cmd_validate(args, argv):
    path = resolve_config_path(args.config)
    loaded = load_config(path)
    cs = _resolve_state(loaded, None)
    trials = args.trials if args.trials is not None else loaded.sim.get(
        "trials", 1_000_000)
    seed = args.seed if args.seed is not None else loaded.sim.get("seed", 0)
    mode = loaded.sim.get("mode", "inverse-cdf")
    batch = loaded.sim.get("batch_size", 100_000)
    if trials < _LOW_POWER_TRIALS:
        print(f"warning: only {trials} trials; the standard error is too "
              f"wide to catch small regressions", file=sys.stderr)
    analytic = offload_probability(loaded.network, cs, QuadratureSpec()).p_s
    mc = estimate_ps(loaded.network, cs,
                     SimConfig(trials=trials, seed=seed, mode=mode,
                               batch_size=batch))
    # the comparison scale: the larger of the empirical standard error and
    # the binomial one implied by the analytic value, so p_hat pinned at
    # 0 or 1 by a short run cannot fake a zero-width interval
    se = max(mc.std_error, math.sqrt(analytic * (1.0 - analytic) / trials))
    diff = analytic - mc.estimate
    if se == 0.0:
        agree = diff == 0.0
        z = 0.0 if agree else math.inf
    else:
        z = diff / se
        agree = abs(z) <= 3.0
    payload = {
        "p_s_analytic": analytic,
        "p_s_mc": mc.estimate,
        "std_error": se,
        "z_score": z,
        "trials": trials,
        "seed": seed,
        "agree": agree,
    }
    report = (f"p_s_analytic = {_fmt(analytic)}\n"
              f"p_s_mc       = {_fmt(mc.estimate)}\n"
              f"std_error    = {_fmt(se)}\n"
              f"z_score      = {_fmt(z)}\n"
              f"agreement    = {'PASS' if agree else 'FAIL'}\n")
    if args.output:
        _emit(_json_text(payload), args.output, path, argv, seed)
    sys.stdout.write(report)
    return 0 if agree else 5


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="satoffload",
        description="Satellite/terrestrial offload probability, idle "
                    "probability, and constellation planning")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ps", help="offload probability for one config")
    p.add_argument("config")
    p.add_argument("--t", type=float, default=None,
                   help="pass time looked up in the [channel] timeline")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_ps)

    p = sub.add_parser("sweep", help="offload probability over a grid")
    p.add_argument("config")
    p.add_argument("--vary", nargs=4, action="append", required=True,
                   metavar=("PARAM", "LO", "HI", "STEPS"),
                   help="grid over one of t, B, N, r_s, p_sat_tx, U; "
                        "repeat for a cross product")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("plan", help="minimum constellation for an idle budget")
    p.add_argument("config")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--region-area", type=float, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("validate",
                       help="analytic engine vs Monte Carlo on one config")
    p.add_argument("config")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return args.func(args, argv)
    except (ConfigError, DomainError, OutOfRange, NoExactMatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NonConvergence as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (NoBracket, Infeasible) as e:
        print(f"error: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
