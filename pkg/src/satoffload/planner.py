"""Smallest constellation that maximizes offload under an idle budget.

The idle probability f_empty(n) = 1 - c (r_e+r_s)^2 u_s(n) / n rises
toward 1 as n grows (u_s = P_s(n) * u_intensity grows sublinearly), while
P_s itself rises with n.  Maximizing P_s subject to f_empty <= epsilon
therefore lands exactly on the boundary f_empty = epsilon, and the plan
reduces to a one-dimensional root solve in n, treated as continuous and
rounded up afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .capacity import VORONOI_C, empty_prob_approx
from .errors import DomainError, Infeasible, NoBracket, NonConvergence
from .offload import offload_probability

__all__ = ["PlannerConfig", "PlanResult", "solve_plan", "local_count"]

_MAX_BISECT = 200


@dataclass(frozen=True)
class PlannerConfig:
    """Idle budget, Voronoi constant, optional region, and solver knobs.

    n_bracket bounds the root search; when omitted the solver starts
    just above c and doubles its way up to 1e6.  Budgets beyond that
    (continental constellations) need an explicit bracket.
    """

    epsilon: float = 0.1
    c: float = VORONOI_C
    region_area: float = None
    n_bracket: tuple = None
    root_tol: float = 1e-6

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not self.c > 0.0:
            raise DomainError(f"c must be > 0, got {self.c}")
        if not self.root_tol > 0.0:
            raise DomainError(f"root_tol must be > 0, got {self.root_tol}")
        if self.region_area is not None and not self.region_area > 0.0:
            raise DomainError(
                f"region_area must be > 0, got {self.region_area}")
        if self.n_bracket is not None:
            lo, hi = self.n_bracket
            if not 0.0 < lo < hi:
                raise DomainError(
                    f"n_bracket needs 0 < n_lo < n_hi, got {self.n_bracket}")


@dataclass(frozen=True)
class PlanResult:
    """Continuous root, its ceiling, and the plan evaluated at that ceiling."""

    n_real: float
    n_opt: int
    p_s_opt: float
    f_empty_at_n_opt: float
    density: float
    n_local: float
    constraint_satisfied: bool


def solve_plan(cfg, cs, pc, spec, ps_fn=None):
    """Root of f_empty(n) = epsilon with the demand coupled through P_s(n).

    ps_fn(n) -> probability overrides the offload engine (test hook for
    decoupled closed-form checks).  Raises Infeasible when there is no
    offloaded demand or the validity regime n >= c (r_e+r_s)^2 u_s is
    never reached; NoBracket when f_empty - epsilon keeps one sign over
    the bracket.
    """
    if ps_fn is None:
        def ps_fn(n):
            return offload_probability(
                replace(cfg, n_sats=float(n)), cs, spec).p_s
    cache = {}

    def p_s(n):
        if n not in cache:
            cache[n] = ps_fn(n)
        return cache[n]

    def f_empty(n):
        return empty_prob_approx(n, p_s(n) * cfg.u_intensity, cfg, pc.c)

    def g(n):
        return f_empty(n) - pc.epsilon

    if cfg.u_intensity == 0.0:
        raise Infeasible(
            "u_intensity is 0: nothing offloads, every satellite is idle "
            "with probability 1")

    if pc.n_bracket is not None:
        lo, hi = (float(pc.n_bracket[0]), float(pc.n_bracket[1]))
    else:
        lo, hi = max(math.ceil(pc.c) + 1.0, 8.0), 1e6
    if g(lo) > 0.0:
        raise NoBracket(
            f"f_empty({lo:g}) = {f_empty(lo):.6g} already exceeds "
            f"epsilon = {pc.epsilon}; the root lies below n_lo")
    # climb into the validity regime (f_empty >= 0) before bisecting;
    # below it the linear form is negative and meaningless
    prev = lo
    while f_empty(lo) < 0.0:
        if lo >= hi:
            raise Infeasible(
                f"validity regime n >= c (r_e+r_s)^2 u_s not reached by "
                f"n_hi = {hi:g}")
        prev, lo = lo, min(2.0 * lo, hi)
    if g(lo) > 0.0:
        lo, hi = prev, lo  # regime entry jumped past the root
    elif g(hi) < 0.0:
        raise NoBracket(
            f"f_empty({hi:g}) = {f_empty(hi):.6g} still below "
            f"epsilon = {pc.epsilon}; the root lies above n_hi")

    probes = np.linspace(lo, hi, 4)
    gs = [g(float(x)) for x in probes]
    if any(b <= a for a, b in zip(gs, gs[1:])):
        raise Infeasible(
            f"f_empty is not strictly increasing over [{lo:g}, {hi:g}]; "
            f"the monotone root structure does not hold here")

    for _ in range(_MAX_BISECT):
        if hi - lo <= pc.root_tol * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise NonConvergence(
            f"bisection cap {_MAX_BISECT} hit on [{lo:g}, {hi:g}]")
    n_real = 0.5 * (lo + hi)

    n_opt = math.ceil(n_real)
    f_at_opt = f_empty(float(n_opt))
    density = n_opt / (4.0 * np.pi * cfg.shell_radius ** 2)
    n_local = (density * pc.region_area
               if pc.region_area is not None else None)
    return PlanResult(
        n_real=n_real, n_opt=n_opt, p_s_opt=p_s(float(n_opt)),
        f_empty_at_n_opt=f_at_opt, density=density, n_local=n_local,
        constraint_satisfied=f_at_opt <= pc.epsilon + pc.root_tol)


def local_count(pr, area):
    """Satellites apportioned to a region of the given area: density * area."""
    if area < 0.0:
        raise DomainError(f"area must be >= 0, got {area}")
    return pr.density * area
