#!/usr/bin/env python3
"""Benchmark the pure-Python SNF kernel against the compiled one.

Runs Smith normal form with transforms on random dense integer
matrices of increasing size and reports per-call times and the speedup.
Entry growth during elimination is what dominates at larger sizes, so
the compiled win shrinks as bignum arithmetic takes over; the point of
the extension is the small-matrix regime the spectral machinery
actually lives in.

Usage: python benchmarks/bench_snf.py [--reps N]
"""

import argparse
import random
import time

from leray._kernel import pure

try:
    from leray._kernel import _csnf
except ImportError:
    _csnf = None


def bench(fn, mats, reps):
    best = None
    for _ in range(reps):
        start = time.perf_counter()
        for a, r, c in mats:
            fn(a, r, c)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best / len(mats)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=5,
                        help="repetitions per size (best time is kept)")
    args = parser.parse_args()

    rng = random.Random(20240817)
    sizes = [4, 8, 12, 16, 24, 32]
    print("%-8s %-6s %12s %12s %9s" %
          ("size", "mats", "pure [ms]", "compiled", "speedup"))
    for n in sizes:
        mats = []
        for _ in range(max(3, 48 // n)):
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            mats.append((a, n, n))
        t_pure = bench(pure.smith_with_transforms, mats, args.reps)
        if _csnf is None:
            print("%-8s %-6d %12.3f %12s %9s" %
                  ("%dx%d" % (n, n), len(mats), t_pure * 1e3, "n/a", "n/a"))
            continue
        t_c = bench(_csnf.smith_with_transforms, mats, args.reps)
        for a, r, c in mats:  # outputs must agree exactly
            assert pure.smith_with_transforms(a, r, c) == \
                _csnf.smith_with_transforms(a, r, c)
        print("%-8s %-6d %12.3f %12.3f %8.2fx" %
              ("%dx%d" % (n, n), len(mats), t_pure * 1e3, t_c * 1e3,
               t_pure / t_c))
    if _csnf is None:
        print("\ncompiled kernel not available; showing pure backend only")


if __name__ == "__main__":
    main()
