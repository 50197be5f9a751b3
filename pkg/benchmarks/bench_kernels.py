"""Compare the compiled and pure-Python cycle-search kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Each case is the digraph of (A A^t)^k for a fixed pattern, searched
exhaustively (MODE_ALL) and for the first k-even cycle.
"""
from __future__ import annotations

import argparse
import itertools
import time

from qualprod import kernels
from qualprod.blockcirc import alternating_digraph
from qualprod.signpat import SignPattern

CASES = [
    ("ones 3x3, k=1", SignPattern.ones(3, 3), 1),
    ("ones 3x3, k=2", SignPattern.ones(3, 3), 2),
    ("ones 4x4, k=1", SignPattern.ones(4, 4), 1),
    ("ones 3x3, k=3", SignPattern.ones(3, 3), 3),
    ("ones 4x4, k=2", SignPattern.ones(4, 4), 2),
    ("path 4x4, k=3", SignPattern.from_rows([[1, 1, 0, 0], [0, 1, -1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]), 3),
]


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_find_cycles is None:
        print("compiled kernel unavailable; only the pure-Python timings are shown")
    header = f"{'case':<18} {'mode':<10} {'cycles':>7} {'python s':>10} {'compiled s':>11} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for (name, p, k), (mode_name, mode) in itertools.product(
        CASES, [("all", kernels.MODE_ALL), ("first-even", kernels.MODE_FIRST_EVEN)]
    ):
        d = alternating_digraph(p, k)
        indptr, indices, weights = d.csr
        call = (d.n_vertices, indptr, indices, weights, d.k, mode, 10**8)
        found, _, _ = kernels.python_find_cycles(*call)
        t_py = _time(kernels.python_find_cycles, call, args.repeat)
        if kernels.compiled_find_cycles is not None:
            if kernels.compiled_find_cycles(*call)[0] != found:
                raise SystemExit(f"kernels disagree on {name} ({mode_name})")
            t_c = _time(kernels.compiled_find_cycles, call, args.repeat)
            print(f"{name:<18} {mode_name:<10} {len(found):>7} {t_py:>10.4f} {t_c:>11.5f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<18} {mode_name:<10} {len(found):>7} {t_py:>10.4f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
