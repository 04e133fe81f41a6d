"""Benchmark: compiled SNF kernel vs the pure-Python path.

Times smith_normal_form on seeded random matrices (certificate verification
included, since callers always pay for it).  The kernel raises OverflowError
when transform coefficients leave the 64-bit safe range -- frequent for
larger or denser inputs -- and those instances are reported as fallbacks
rather than timed, which is exactly how the "auto" backend behaves.

Usage:
    python benchmarks/bench_snf.py [--sizes 4,6,8,12] [--bound 9] [--reps 30]
"""

from __future__ import annotations

import argparse
import random
import time

from sglink.smith import IntMatrix, _native, smith_normal_form


def bench_one(size: int, bound: int, reps: int, seed: int) -> dict:
    rng = random.Random(seed)
    mats = [
        IntMatrix.from_rows(
            [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        )
        for _ in range(reps)
    ]

    t0 = time.perf_counter()
    for m in mats:
        smith_normal_form(m, backend="python")
    py_total = time.perf_counter() - t0

    native_total = None
    fallbacks = 0
    if _native is not None:
        timed = []
        for m in mats:
            try:
                t0 = time.perf_counter()
                smith_normal_form(m, backend="native")
                timed.append(time.perf_counter() - t0)
            except OverflowError:
                fallbacks += 1
        native_total = sum(timed) / len(timed) * reps if timed else None

    return {
        "size": size,
        "python_us": py_total / reps * 1e6,
        "native_us": None if native_total is None else native_total / reps * 1e6,
        "fallback_pct": 100.0 * fallbacks / reps,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,6,8,12", help="comma-separated square sizes")
    ap.add_argument("--bound", type=int, default=9, help="entry magnitude bound")
    ap.add_argument("--reps", type=int, default=30, help="matrices per size")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if _native is None:
        print("compiled kernel not available; timing the pure path only")
    print(f"{'size':>5} {'python':>12} {'native':>12} {'speedup':>9} {'fallback':>9}")
    for size in (int(s) for s in args.sizes.split(",")):
        r = bench_one(size, args.bound, args.reps, args.seed)
        native = f"{r['native_us']:9.1f} us" if r["native_us"] else "        --"
        speedup = (
            f"{r['python_us'] / r['native_us']:8.1f}x" if r["native_us"] else "       --"
        )
        print(
            f"{r['size']:>5} {r['python_us']:9.1f} us {native} {speedup} "
            f"{r['fallback_pct']:8.0f}%"
        )


if __name__ == "__main__":
    main()
