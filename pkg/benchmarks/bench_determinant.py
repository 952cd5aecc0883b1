"""Time the compiled and pure-Python determinant kernels on twisted matrices.

    python benchmarks/bench_determinant.py [--sizes 4 8 12] [--samples 5] [--bars 6]

Each sample is a random diagram; both kernels see the same M~ - P~ and their
results are compared before any timing is reported.
"""
import argparse
import statistics
import time

from jkss import _kernel
from jkss.diagram import random_diagram
from jkss.invariant import build_Mtilde, build_Ptilde


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 12])
    parser.add_argument("--samples", type=int, default=5)
    parser.add_argument("--bars", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    backends = ["python"]
    if _kernel.BACKEND == "cython":
        backends.insert(0, "cython")
    else:
        print("compiled kernel unavailable; timing the Python kernel only")

    print(f"{'crossings':>9} {'matrix':>7} " + " ".join(f"{b + ' (s)':>12}" for b in backends)
          + ("  speedup" if len(backends) == 2 else ""))
    for n in args.sizes:
        times = {b: [] for b in backends}
        for k in range(args.samples):
            d = random_diagram(n, args.bars, seed=args.seed * 1000 + 17 * n + k)
            m = build_Mtilde(d) - build_Ptilde(d)
            values = []
            for b in backends:
                t, value = timed(_kernel.polynomial_determinant, m, b)
                times[b].append(t)
                values.append(value)
            if len(set(values)) != 1:
                raise SystemExit(f"backends disagree on crossings={n} sample={k}")
        medians = {b: statistics.median(times[b]) for b in backends}
        row = f"{n:>9} {4 * n:>4}x{4 * n:<3}" + "".join(f" {medians[b]:>12.4f}" for b in backends)
        if len(backends) == 2:
            row += f"  {medians['python'] / medians['cython']:>6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
