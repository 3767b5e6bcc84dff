"""Compare the compiled enumeration kernel against the pure-Python one.

Runs the same exhaustive price search through both backends on a sweep
of instance sizes and prints wall times plus the speedup.  Revenues are
asserted equal, so this doubles as a backend equivalence check.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from geopricer import Consumer, GeneratorSpec, Instance, generate
from geopricer.exact import brute_force_uudp
from geopricer.kernels import BACKEND


def run_case(n: int, m: int, d: int, seed: int, backend: str):
    spec = GeneratorSpec(
        kind="random", n=n, m=m, d=d,
        budgets=tuple(Fraction(b) for b in (1, 2, 3, 5, 8)),
        coord_hi=6, seed=seed,
    )
    instance = generate(spec)
    start = time.perf_counter()
    solution = brute_force_uudp(instance, backend=backend)
    return solution.revenue, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if BACKEND != "compiled":
        print("compiled kernel unavailable; timing pure Python only")
    cases = [(5, 6, 2), (6, 8, 2), (7, 8, 3), (8, 10, 3)]
    print(f"{'case':>14} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for n, m, d in cases:
        py_best = comp_best = None
        for rep in range(args.repeat):
            rev_py, t_py = run_case(n, m, d, seed=rep, backend="python")
            py_best = t_py if py_best is None else min(py_best, t_py)
            if BACKEND == "compiled":
                rev_c, t_c = run_case(n, m, d, seed=rep, backend="compiled")
                assert rev_c == rev_py, f"backend mismatch on n={n} seed={rep}"
                comp_best = t_c if comp_best is None else min(comp_best, t_c)
        label = f"n={n} m={m} d={d}"
        if comp_best is not None:
            print(f"{label:>14} {py_best:>9.3f}s {comp_best:>9.3f}s "
                  f"{py_best / comp_best:>7.1f}x")
        else:
            print(f"{label:>14} {py_best:>9.3f}s {'n/a':>10} {'n/a':>8}")


if __name__ == "__main__":
    main()
