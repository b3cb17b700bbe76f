"""Compare the compiled kernels with the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--size 5] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

from flecnx import kernels
from flecnx.enumerator import enumerate_fle, enumerate_lattices


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if kernels.compiled_kernels is None:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
        return 1
    lattices = enumerate_lattices(args.size)
    algebras = enumerate_fle(args.size).algebras

    def monoids(mod):
        return lambda: [mod.monoid_tables(l.leq, l.join, u, l.bottom) for l in lattices for u in range(l.size)]

    def forms(mod):
        return lambda: [mod.canonical_form(a.leq, a.prod, a.unit, a.zero) for a in algebras]

    print(f"size {args.size}: {len(lattices)} lattices, {len(algebras)} algebras, best of {args.repeat}")
    print(f"{'kernel':<16} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, make in (("monoid_tables", monoids), ("canonical_form", forms)):
        py = _best(make(kernels.python_kernels), args.repeat)
        cc = _best(make(kernels.compiled_kernels), args.repeat)
        print(f"{name:<16} {py:>10.3f} {cc:>11.3f} {py / cc:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
