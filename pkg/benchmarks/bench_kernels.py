"""Compare the numba and numpy kernel paths.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import math
import timeit

import numpy as np

from portfolio import kernels
from portfolio._accel import HAVE_NUMBA


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    n_map = 10_542
    xs, ys = rng.random(n_map) * 40 - 20, rng.random(n_map) * 40 - 20
    diameter = math.sqrt(kernels.diameter_sq_numpy(xs, ys))

    rows = []
    if HAVE_NUMBA:
        kernels.diameter_sq_numba(xs[:10], ys[:10])
        kernels.rao_pair_sum_numba(xs[:10], ys[:10], np.full(10, 0.1), diameter)
    rows.append(("diameter n=10542", "naive", best_of(lambda: kernels.diameter_sq_naive(xs, ys), 1)))
    rows.append(("diameter n=10542", "numpy", best_of(lambda: kernels.diameter_sq_numpy(xs, ys), args.repeat)))
    if HAVE_NUMBA:
        rows.append(("diameter n=10542", "numba", best_of(lambda: kernels.diameter_sq_numba(xs, ys), args.repeat)))

    for k in (500, 2_000, 5_000):
        idx = rng.choice(n_map, size=k, replace=False)
        p = rng.dirichlet(np.ones(k))
        sx, sy = xs[idx], ys[idx]
        label = f"rao pairs k={k}"
        rows.append((label, "numpy", best_of(lambda: kernels.rao_pair_sum_numpy(sx, sy, p, diameter), args.repeat)))
        if HAVE_NUMBA:
            rows.append((label, "numba", best_of(lambda: kernels.rao_pair_sum_numba(sx, sy, p, diameter), args.repeat)))
            a = kernels.rao_pair_sum_numba(sx, sy, p, diameter)
            b = kernels.rao_pair_sum_numpy(sx, sy, p, diameter)
            rows.append((label, "|numba-numpy|", abs(a - b)))

    width = max(len(r[0]) for r in rows)
    for name, backend, value in rows:
        unit = "" if backend.startswith("|") else " s"
        print(f"{name:<{width}}  {backend:<14} {value:.3e}{unit}")


if __name__ == "__main__":
    main()
