"""Compare the compiled and pure-Python kernels.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``. Prints one
line per workload with the best wall time of each back-end and the speedup.
"""

import argparse
import time

import numpy as np

from jacobizeros.jacobi import build_pi
from jacobizeros.kernels import available_backends
from jacobizeros.numerics import PrecisionConfig
from jacobizeros.zeros import aberth_solve, matching_distance


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_aberth(backends, m, repeat):
    precision = PrecisionConfig.for_roots(m)
    poly = build_pi(m)
    times, roots = {}, {}
    for name in backends:
        times[name], zs = best_of(lambda: aberth_solve(poly, precision, backend=name), repeat)
        roots[name] = zs.roots
    label = f"aberth m={m} ({precision.mantissa_bits} bits)"
    extra = ""
    if len(roots) == 2:
        extra = f"  max root gap {float(matching_distance(*roots.values())):.1e}"
    return label, times, extra


def bench_grid(backends, n, repeat):
    axis = np.linspace(-6, 6, n)
    times, grids = {}, {}
    for name, mod in backends.items():
        times[name], grids[name] = best_of(lambda: mod.q_local_abs_grid(axis, axis), repeat)
    return f"|q_l| grid {n}x{n} (double)", times, ""


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--m", type=int, nargs="*", default=[50, 100])
    parser.add_argument("--grid-n", type=int, default=241)
    args = parser.parse_args(argv)
    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; timing the pure-Python kernel only")
    results = [bench_aberth(backends, m, args.repeat) for m in args.m]
    results.append(bench_grid(backends, args.grid_n, args.repeat))
    for label, times, extra in results:
        cols = "  ".join(f"{k}={v:.3f}s" for k, v in sorted(times.items()))
        speed = ""
        if "cython" in times:
            speed = f"  speedup x{times['python'] / times['cython']:.1f}"
        print(f"{label:36s} {cols}{speed}{extra}")


if __name__ == "__main__":
    main()
