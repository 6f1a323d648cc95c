#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against its pure-Python twin.

The determinant scan over trial eigenvalues is the hot loop of the disk
spectrum computation; this script times it (and raw Bessel evaluation) on
both backends and prints the speedup.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from elastica.specfun import _pykernels as pure

try:
    from elastica.specfun import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(quick=False):
    n_grid = 2_000 if quick else 20_000
    lams = np.linspace(0.5, 2e4, n_grid)
    ks = [0, 1, 5, 15, 40]
    rows = []

    for name, backend in [("pure", pure)] + ([("compiled", compiled)] if compiled else []):
        t_det = timeit(lambda b=backend: [b.det_grid(k, lams, 1.0, 1.0, False) for k in ks])
        xs = np.linspace(0.1, 500.0, n_grid)
        t_bessel = timeit(lambda b=backend: [b.bessel_j_kernel(7, float(x)) for x in xs[:: max(1, n_grid // 2000)]])
        rows.append((name, t_det, t_bessel))

    print(f"{'backend':<10} {'det scan (s)':>14} {'bessel J_7 (s)':>16}")
    for name, t_det, t_bessel in rows:
        print(f"{name:<10} {t_det:>14.4f} {t_bessel:>16.4f}")
    if compiled and len(rows) == 2:
        print(f"\nspeedup: det scan x{rows[0][1] / rows[1][1]:.1f}, "
              f"bessel x{rows[0][2] / rows[1][2]:.1f}")
    else:
        print("\ncompiled extension not available; showing pure backend only")

    # cross-check while we are here
    d_p, s_p = pure.det_grid(3, lams[:500], 1.0, 1.0, False)
    if compiled:
        d_c, s_c = compiled.det_grid(3, lams[:500], 1.0, 1.0, False)
        worst = float(np.max(np.abs(d_c - d_p) / np.maximum(s_p, 1e-300)))
        print(f"backend agreement on the scan grid: {worst:.2e} (scaled)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    bench(quick=ap.parse_args().quick)
