"""Time the compiled and pure-Python enumeration kernels on the same workloads.

Run with ``python benchmarks/bench_kernels.py``.  Each workload is timed on
every importable backend; counts are compared so a speedup never hides a
wrong answer.
"""

from __future__ import annotations

import argparse
import time

from factorfree import _backend

# (label, kernel name, positional arguments after the module)
WORKLOADS = [
    ("square-free k=3, n=30, linear+circular", "power_free_counts", (3, 2, 1, 30, True, (), 2**62)),
    ("square-free k=5, n=9, linear+circular", "power_free_counts", (5, 2, 1, 9, True, (), 2**62)),
    ("7/4-free k=4, n=14, linear", "power_free_counts", (4, 7, 4, 14, False, (), 2**62)),
    # Fibonacci shift {11} over k=2, circular, via the transition table
    ("DFA {11} k=2, n=24, circular", "dfa_counts", ([0, 1, 0, 2, 2, 2], 2, 0, 2, 24, True, (), 2**62)),
]


def bench(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = _backend.available_backends()
    print(f"backends: {', '.join(sorted(backends))}")
    print(f"{'workload':42s} " + " ".join(f"{name:>10s}" for name in sorted(backends)) + "   speedup")
    for label, kernel, kargs in WORKLOADS:
        times, results = {}, {}
        for name in sorted(backends):
            times[name], results[name] = bench(getattr(backends[name], kernel), kargs, args.repeat)
        counts = {name: r[:2] for name, r in results.items()}
        if len({repr(v) for v in counts.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        row = " ".join(f"{times[name]:9.4f}s" for name in sorted(backends))
        speedup = ""
        if "cython" in times and "python" in times:
            speedup = f"{times['python'] / times['cython']:8.1f}x"
        print(f"{label:42s} {row}  {speedup}")


if __name__ == "__main__":
    main()
