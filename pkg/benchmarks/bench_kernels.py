"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
    python benchmarks/bench_kernels.py [--quick]

Times the batch analyzer across problem sizes, the exact enumerator, and an
end-to-end simulate() call, printing a table with speedups.  Both backends
are imported directly, so the comparison runs regardless of which one the
package selected at import time.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from randmap import _fallback

try:
    from randmap import _core
except ImportError:
    _core = None


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_batch(quick: bool):
    print(f"{'batch analyze':<28}{'rows x n':>16}{'numpy':>10}{'cython':>10}{'speedup':>9}")
    cases = [(2000, 100), (2000, 1000), (500, 10_000)]
    if not quick:
        cases.append((100, 100_000))
    rng = np.random.default_rng(0)
    for rows, n in cases:
        imgs = rng.integers(0, n, size=(rows, n), dtype=np.int64)
        t_np = _time(lambda: _fallback.batch_stats(imgs))
        if _core is not None:
            t_cy = _time(lambda: _core.batch_stats(imgs))
            print(f"{'':<28}{rows:>8} x {n:<6}{t_np:>9.3f}s{t_cy:>9.3f}s{t_np / t_cy:>8.1f}x")
        else:
            print(f"{'':<28}{rows:>8} x {n:<6}{t_np:>9.3f}s{'-':>10}{'-':>9}")


def bench_enumerate(quick: bool):
    print(f"{'exact enumeration':<28}{'n':>16}{'numpy':>10}{'cython':>10}{'speedup':>9}")
    for n in (5, 6) if quick else (5, 6, 7):
        t_np = _time(lambda: _fallback.enumerate_tally(n), repeats=1)
        if _core is not None:
            t_cy = _time(lambda: _core.enumerate_tally(n), repeats=1)
            print(f"{'':<28}{n:>16}{t_np:>9.3f}s{t_cy:>9.3f}s{t_np / t_cy:>8.1f}x")
        else:
            print(f"{'':<28}{n:>16}{t_np:>9.3f}s{'-':>10}{'-':>9}")


def bench_simulate(quick: bool):
    import importlib
    import os

    from randmap import mapping_sim

    n, trials = (2000, 2000) if quick else (10_000, 5000)
    print(f"{'simulate n=%d trials=%d' % (n, trials):<28}{'backend':>16}{'time':>10}")
    for force in (False, True):
        if force:
            os.environ["RANDMAP_FORCE_FALLBACK"] = "1"
        else:
            os.environ.pop("RANDMAP_FORCE_FALLBACK", None)
        import randmap._kernels as kernels

        importlib.reload(kernels)
        importlib.reload(mapping_sim)
        t = _time(lambda: mapping_sim.simulate(n, trials, seed=1), repeats=1)
        print(f"{'':<28}{kernels.BACKEND:>16}{t:>9.2f}s")
    os.environ.pop("RANDMAP_FORCE_FALLBACK", None)
    importlib.reload(importlib.import_module("randmap._kernels"))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()
    if _core is None:
        print("compiled core not available; timing the fallback only\n")
    bench_batch(args.quick)
    print()
    bench_enumerate(args.quick)
    print()
    bench_simulate(args.quick)


if __name__ == "__main__":
    main()
