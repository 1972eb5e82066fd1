"""Compare the compiled and pure-Python numeric kernels.

Usage: python benchmarks/bench_codec.py [--number N] [--repeat R]

Times the three hot paths (level iteration, bisection decode, greedy
encode) against both backends and prints per-call times with the
speedup factor. Requires the compiled extension; if it is missing, the
pure backend is still timed so the numbers remain useful.
"""

from __future__ import annotations

import argparse
import timeit

from fuzznest import _kernels

try:
    from fuzznest import _speedups
except ImportError:
    _speedups = None

SEQ_A = (-2, (1, 0, 1, 0, 1))
SEQ_B = (0, (1, 0, 1, 0, 0, 1))
ENCODE_VALUES = [i / 40.0 for i in range(1, 40)]


def workload_levels(impl):
    for k in range(-30, 31):
        impl.level_value(0.37, k)


def workload_decode(impl):
    impl.series_root(*SEQ_A, 1e-12)
    impl.series_root(*SEQ_B, 1e-12)


def workload_encode(impl):
    for w in ENCODE_VALUES:
        impl.greedy_encode(w, 1e-12, 64, 256)


WORKLOADS = [
    ("level_value, k in [-30,30]", workload_levels),
    ("series_root, two sequences", workload_decode),
    ("greedy_encode, 39 values", workload_encode),
]


def best_per_call(fn, impl, number: int, repeat: int) -> float:
    timer = timeit.Timer(lambda: fn(impl))
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--number", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    name_w = max(len(name) for name, _ in WORKLOADS) + 2
    if _speedups is None:
        print("compiled extension not available; timing pure backend only\n")
        print(f"{'workload':<{name_w}}{'pure':>12}")
        for name, fn in WORKLOADS:
            pure = best_per_call(fn, _kernels, args.number, args.repeat)
            print(f"{name:<{name_w}}{pure * 1e6:>10.1f} us")
        return 0

    print(f"{'workload':<{name_w}}{'pure':>12}{'compiled':>12}{'speedup':>10}")
    for name, fn in WORKLOADS:
        pure = best_per_call(fn, _kernels, args.number, args.repeat)
        fast = best_per_call(fn, _speedups, args.number, args.repeat)
        print(
            f"{name:<{name_w}}{pure * 1e6:>10.1f} us{fast * 1e6:>10.1f} us"
            f"{pure / fast:>9.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
