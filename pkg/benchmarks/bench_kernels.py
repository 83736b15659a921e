"""Benchmark the JIT-compiled numeric kernels against the pure-numpy fallbacks.

Usage:
    python3 benchmarks/bench_kernels.py [--batches 128,1024,8192] [--m 8] [--k 12]

The numba path is selected automatically for large batches; set
MAMLAB_NO_NUMBA=1 to force the numpy fallback everywhere (as the library
itself does).  This script times both implementations directly.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mamlab import _kernels


def _time(fn, *args, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batches", default="128,1024,8192,65536")
    parser.add_argument("--m", type=int, default=8)
    parser.add_argument("--k", type=int, default=12)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    B = rng.integers(0, 4, size=(args.k, args.m)).astype(np.float64)
    x = np.abs(rng.normal(size=args.m)) + 0.5

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable; only the numpy fallback can be timed")

    print(f"m={args.m} k={args.k}")
    header = f"{'batch':>8} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>8}"
    print(header)
    for batch in (int(b) for b in args.batches.split(",")):
        pts = np.abs(rng.normal(size=(batch, args.m))) + 0.1
        dirs = rng.normal(size=(batch, args.m))
        t_np = _time(_kernels.radial_batch_np, B, pts, dirs)
        if _kernels.HAVE_NUMBA:
            _kernels._radial_batch_nb(B, pts, dirs)  # warm up / compile
            t_nb = _time(_kernels._radial_batch_nb, B, pts, dirs)
            print(f"{batch:>8} {t_np:>12.6f} {t_nb:>12.6f} {t_np / t_nb:>8.2f}")
        else:
            print(f"{batch:>8} {t_np:>12.6f} {'-':>12} {'-':>8}")

    # single-point kernels (hessian / potential) for completeness
    t_np = _time(_kernels.hessian_np, B, x, repeats=20)
    line = f"hessian  numpy {t_np:.6f}s"
    if _kernels.HAVE_NUMBA:
        _kernels._hessian_nb(B, x)
        t_nb = _time(_kernels._hessian_nb, B, x, repeats=20)
        line += f"  numba {t_nb:.6f}s  speedup {t_np / t_nb:.2f}"
    print(line)


if __name__ == "__main__":
    main()
