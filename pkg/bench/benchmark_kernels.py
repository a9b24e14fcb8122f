#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallbacks.

Runs the same workloads through both backends and prints a table with the
speedup.  Results must agree exactly; a mismatch aborts.

Usage: python bench/benchmark_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import os
import sys
import time

os.environ.setdefault("TURAN_CYCLES_THREADS", "1")

from turancycles import kernels
from turancycles.blowup import BlowupSpec, materialize
from turancycles.cycles import _count_from_root  # pure reference
from turancycles.constructions import _edge_pairs, _py_search, exhaustive_max


def time_once(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def count_pure(g, length):
    return sum(_count_from_root(g, r, length) for r in range(g.n))


def count_fast(g, length):
    return kernels.fast.count_cycles_range(g.words(), g.n, length, 0, g.n)


def search_pure(n, k, ell):
    pairs = _edge_pairs(n)
    plen = min(8, len(pairs))
    best, leaves, prunes = -1, 0, 0
    for prefix in range(1 << plen):
        cnt, _, lv, pr = _py_search(n, k, ell, pairs, prefix, plen)
        leaves += lv
        prunes += pr
        best = max(best, cnt)
    return best, leaves, prunes


def search_fast(n, k, ell):
    pairs = _edge_pairs(n)
    plen = min(8, len(pairs))
    best, leaves, prunes = -1, 0, 0
    for prefix in range(1 << plen):
        cnt, _, lv, pr = kernels.fast.search_edge_masks(n, k, ell, prefix, plen)
        leaves += lv
        prunes += pr
        best = max(best, cnt)
    return best, leaves, prunes


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    if not kernels.compiled_available():
        sys.exit("compiled kernels unavailable (or TURAN_CYCLES_PURE=1); nothing to compare")

    count_jobs = [
        ("count C7[3] k=9", BlowupSpec(7, (3,) * 7), 9),
        ("count C5[4] k=11", BlowupSpec(5, (4,) * 5), 11),
    ]
    if not args.quick:
        count_jobs.append(("count C7[3] k=13", BlowupSpec(7, (3,) * 7), 13))

    search_jobs = [("search n=6 k=5 l=3", 6, 5, 3)]
    if not args.quick:
        search_jobs.append(("search n=6 k=7 l=5", 6, 7, 5))

    rows = []
    for name, spec, k in count_jobs:
        g = materialize(spec)
        fast_out, fast_t = time_once(lambda: count_fast(g, k))
        pure_out, pure_t = time_once(lambda: count_pure(g, k))
        assert fast_out == pure_out, (name, fast_out, pure_out)
        rows.append((name, str(fast_out), pure_t, fast_t))

    for name, n, k, ell in search_jobs:
        fast_out, fast_t = time_once(lambda: search_fast(n, k, ell))
        pure_out, pure_t = time_once(lambda: search_pure(n, k, ell))
        assert fast_out == pure_out, (name, fast_out, pure_out)
        rows.append((name, str(fast_out[0]), pure_t, fast_t))

    print(f"{'workload':<24} {'result':>12} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for name, result, pure_t, fast_t in rows:
        speed = pure_t / fast_t if fast_t > 0 else float("inf")
        print(f"{name:<24} {result:>12} {pure_t:>10.3f} {fast_t:>11.4f} {speed:>7.0f}x")

    # threaded scaling of the full search on n=7
    if not args.quick:
        for threads in (1, 8):
            t0 = time.perf_counter()
            res = exhaustive_max(7, 7, 5, threads=threads)
            dt = time.perf_counter() - t0
            print(f"exhaustive_max(7,7,5) threads={threads}: max={res.max_count} in {dt:.2f}s")


if __name__ == "__main__":
    main()
