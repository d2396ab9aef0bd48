"""Compare the numba kernels against their pure-numpy / pure-Python twins.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Requires the default (numba-enabled) install; the fallback flavors are
always importable, so both sides run in one process.
"""

import math
import time

import numpy as np

from meanball import kernels
from meanball.distributions import rng_for


def timed(fn, *args, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    if not kernels.NUMBA_ENABLED:
        print("numba is disabled (MEANBALL_NO_NUMBA set?); nothing to compare")
        return

    rows = []

    # inequality grid: jitted triple loop vs vectorized numpy
    lams = np.arange(1, 801) * 1e-3
    xs = np.arange(1, 501) * 1e-3
    ds = np.array([1.0, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0])
    kernels._penalty_scan_loop(lams[:2], xs[:2], ds[:1])  # warm up JIT
    t_nb, out_nb = timed(kernels._penalty_scan_loop, lams, xs, ds)
    t_np, out_np = timed(kernels._penalty_scan_np, lams, xs, ds)
    assert abs(out_nb[0] - out_np[0]) < 1e-15
    rows.append(("inequality grid (2.8M pts)", t_nb, t_np))

    # stream replay: jitted loop vs the same loop interpreted
    rng = rng_for(0, 0)
    stream = rng.uniform(-0.9, 0.9, size=(1000, 5))
    args = (stream, np.zeros(5), math.sqrt(5), 1.0, math.log(40.0), 0.5, 0.25,
            kernels.K_CS, 0, 0.0)
    kernels.replay_kernel(*args)
    t_nb, _ = timed(kernels.replay_kernel, *args)
    t_py, _ = timed(kernels._replay_py, *args)
    rows.append(("stream replay (1000 x 5)", t_nb, t_py))

    # certificate trace
    lams_tr = rng.uniform(0.05, 0.8, size=1000)
    targs = (stream, np.zeros(5), lams_tr, math.sqrt(5), 1.0)
    kernels.trace_kernel(*targs)
    t_nb, _ = timed(kernels.trace_kernel, *targs)
    t_py, _ = timed(kernels._trace_py, *targs)
    rows.append(("certificate trace (1000 x 5)", t_nb, t_py))

    # unweighted-mean path: jitted loop vs cumsum numpy
    walk = rng.uniform(-0.25, 0.25, size=(1_000_000, 1))
    largs = (walk, np.zeros(1))
    kernels._lil_path_loop(*largs)
    t_nb, _ = timed(kernels._lil_path_loop, *largs)
    t_np, _ = timed(kernels._lil_path_np, *largs)
    rows.append(("iterated-log path (1e6 x 1)", t_nb, t_np))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'fallback':>10}  {'speedup':>8}")
    for name, a, b in rows:
        print(f"{name:<{width}}  {a * 1e3:>8.2f}ms  {b * 1e3:>8.2f}ms  {b / a:>7.1f}x")


if __name__ == "__main__":
    main()
