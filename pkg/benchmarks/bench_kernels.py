"""Kernel benchmark: accelerated vs pure-numpy implementations.

Times the shared numeric kernels through both implementation modules
directly (both are importable regardless of the dispatch flag), plus the
end-to-end offload probability under whichever backend is active.

Usage:
    python benchmarks/bench_kernels.py [--size 100000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from satoffload import NetworkConfig, QuadratureSpec, default_timeline
from satoffload import offload_probability, timeline_lookup
from satoffload._kernels import active_backend
from satoffload._kernels import numpy_impl

try:
    from satoffload._kernels import numba_impl
except ImportError:
    numba_impl = None


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(size, rng):
    d = np.logspace(-3, 6, size)
    g = np.logspace(-4, 3, size)
    r = np.logspace(6, 16, size)
    x = np.logspace(-3, 5, size)
    sats = rng.standard_normal((500, 3))
    sats /= np.linalg.norm(sats, axis=1, keepdims=True)
    users = rng.standard_normal((2000, 3))
    users /= np.linalg.norm(users, axis=1, keepdims=True)
    dist_args = (1000.0, np.pi * 0.3 * 500.0 ** 2,
                 4.0 * 6378.0 * 6878.0 / 500.0 ** 2, -2.0 / 3.0, 500, 1e-12)
    return [
        ("i0e", lambda m: m.i0e_vec(x)),
        ("kummer_ratio", lambda m: m.kummer_ratio_vec(200.0, d, 500, 1e-12)),
        ("zseries_pdf", lambda m: m.zseries_pdf_vec(g, 7.3, 500, 1e-12)),
        ("zseries_cdf", lambda m: m.zseries_cdf_vec(g, 7.3, 500, 1e-12)),
        ("dist_ratio_cdf", lambda m: m.dist_ratio_cdf_vec(r, *dist_args)),
        ("count_occupied", lambda m: m.count_occupied(sats, users)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=100_000,
                    help="elements per vector workload")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timing repeats; best is reported")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    rows = _workloads(args.size, rng)

    if numba_impl is not None:
        for _, fn in rows:
            fn(numba_impl)  # compile outside the timed region

    print(f"active backend: {active_backend()}   vector size: {args.size}")
    header = f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, fn in rows:
        t_np = _best_of(lambda: fn(numpy_impl), args.repeats) * 1e3
        if numba_impl is not None:
            t_nb = _best_of(lambda: fn(numba_impl), args.repeats) * 1e3
            print(f"{name:<16}{t_np:>12.2f}{t_nb:>12.2f}{t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<16}{t_np:>12.2f}{'n/a':>12}{'':>9}")

    cfg = NetworkConfig(r_s=500.0, n_sats=1000.0, b_intensity=0.3,
                        p_sat_tx=8.0)
    cs = timeline_lookup(default_timeline(), 130.0)
    spec = QuadratureSpec()
    offload_probability(cfg, cs, spec)  # warm
    t = _best_of(lambda: offload_probability(cfg, cs, spec), args.repeats)
    print(f"\noffload_probability ({active_backend()} backend): "
          f"{t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
