"""Orbit enumeration: numba kernels against the pure-numpy fallback.

    python3 benchmarks/bench_orbits.py [--max-n 7] [--repeat 3]

The first numba call per process includes JIT compilation (cached on disk
afterwards), so it is timed separately as "warmup".
"""
from __future__ import annotations

import argparse
import time

from coxtrans.fixtures import fixture_problem
from coxtrans.orbits import enumerate_orbits


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    t0 = time.perf_counter()
    enumerate_orbits(fixture_problem("an-w0", [3]), backend="numba")
    print(f"numba warmup: {time.perf_counter() - t0:.2f}s")
    print(f"{'case':<10}{'m':>4}{'orbits':>8}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    cases = [("an-w0", [n]) for n in range(4, args.max_n + 1)] + [("a4-example", [])]
    for name, extra in cases:
        pr = fixture_problem(name, extra)
        t_jit, a = best_of(lambda: enumerate_orbits(pr, backend="numba"), args.repeat)
        t_np, b = best_of(lambda: enumerate_orbits(pr, backend="numpy"), args.repeat)
        assert (a.orbit_count, a.sizes) == (b.orbit_count, b.sizes), name
        label = f"{name} {' '.join(map(str, extra))}".strip()
        print(f"{label:<10}{pr.m:>4}{a.orbit_count:>8}{t_jit:>10.3f}{t_np:>10.3f}{t_np / t_jit:>8.1f}x")


if __name__ == "__main__":
    main()
