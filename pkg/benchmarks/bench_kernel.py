#!/usr/bin/env python3
"""Benchmark: compiled kernel vs pure-Python kernel on the hot node
operations, plus an end-to-end conjugacy workload under the active
kernel.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import random
import statistics
import time

from plconj import _kernel_py
from plconj.randgen import random_conjugate_pair, random_element

try:
    from plconj import _kernel_c
except ImportError:
    _kernel_c = None


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return min(runs), statistics.median(runs)


def _workload_nodes(rng, count=120):
    return [random_element(rng, max_cells=5, denom_exp=8).flat for _ in range(count)]


def bench_kernels(repeat):
    rng = random.Random(99)
    flats = _workload_nodes(rng)
    pairs = list(zip(flats, flats[1:]))

    def compose_all(kernel):
        def run():
            for f, g in pairs:
                kernel.compose_nodes(f, g)

        return run

    def power_all(kernel):
        def run():
            for f in flats[:40]:
                kernel.power_nodes(f, 9)

        return run

    def eval_all(kernel):
        def run():
            for f in flats:
                for i in range(0, len(f) - 4, 4):
                    kernel.eval_dyadic(f, f[i], f[i + 1])

        return run

    rows = []
    for name, make in (("compose", compose_all), ("power^9", power_all), ("eval", eval_all)):
        py_best, _ = _time(make(_kernel_py), repeat)
        if _kernel_c is not None:
            c_best, _ = _time(make(_kernel_c), repeat)
            rows.append((name, py_best, c_best, py_best / c_best))
        else:
            rows.append((name, py_best, None, None))
    return rows


def bench_solver(repeat):
    from plconj.conj import conjugate, verify
    from plconj.kernel import IMPLEMENTATION

    rng = random.Random(7)
    instances = [random_conjugate_pair(rng, max_nodes=12) for _ in range(100)]

    def run():
        for y, z, _ in instances:
            w = conjugate(y, z)
            assert w is not None and verify(y, z, w.conjugator)

    best, med = _time(run, repeat)
    return IMPLEMENTATION, best, med


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'kernel op':<10} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for name, py, cy, ratio in bench_kernels(args.repeat):
        if cy is None:
            print(f"{name:<10} {py:>10.4f} {'n/a':>11} {'n/a':>8}")
        else:
            print(f"{name:<10} {py:>10.4f} {cy:>11.4f} {ratio:>7.2f}x")

    impl, best, med = bench_solver(args.repeat)
    print(f"\n100 conjugacy round trips under the '{impl}' kernel: "
          f"best {best:.3f} s, median {med:.3f} s")


if __name__ == "__main__":
    main()
