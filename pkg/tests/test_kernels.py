"""The numba and numpy kernel paths must agree with each other and with brute force."""
import os
import subprocess
import sys

import numpy as np
import pytest

from oracles import full_universe_rao
from portfolio import kernels
from portfolio._accel import HAVE_NUMBA

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("seed", range(20))
def test_diameter_backends_identical(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 500))
    if seed % 2:
        xs, ys = rng.integers(-3, 3, n).astype(float), rng.integers(-3, 3, n).astype(float)
    else:
        xs, ys = rng.normal(size=n), rng.normal(size=n)
    naive = kernels.diameter_sq_naive(xs, ys)
    assert kernels.diameter_sq_numba(xs, ys) == naive
    assert kernels.diameter_sq_numpy(xs, ys) == naive


def test_points_on_circle():
    t = np.linspace(0, 2 * np.pi, 997, endpoint=False)
    xs, ys = np.cos(t), np.sin(t)
    assert kernels.diameter_sq(xs, ys) == kernels.diameter_sq_naive(xs, ys)


def test_collinear_points():
    xs = np.arange(10.0)
    assert kernels.diameter_sq(xs, 2 * xs) == 81.0 + 4 * 81.0


@needs_numba
@pytest.mark.parametrize("seed", range(20))
def test_rao_backends_agree(seed):
    rng = np.random.default_rng(100 + seed)
    k = int(rng.integers(2, 80))
    xs, ys = rng.random(k), rng.random(k)
    counts = rng.integers(1, 50, k)
    p = counts / counts.sum()
    diam = float(np.sqrt(kernels.diameter_sq_naive(xs, ys)))
    a = kernels.rao_pair_sum_numba(xs, ys, p, diam)
    b = kernels.rao_pair_sum_numpy(xs, ys, p, diam)
    oracle = full_universe_rao({i: (xs[i], ys[i]) for i in range(k)}, {i: int(c) for i, c in enumerate(counts)})
    assert a == pytest.approx(oracle, abs=1e-12)
    assert b == pytest.approx(oracle, abs=1e-12)


@needs_numba
def test_rao_numba_bit_reproducible():
    rng = np.random.default_rng(3)
    xs, ys, p = rng.random(300), rng.random(300), rng.dirichlet(np.ones(300))
    runs = {kernels.rao_pair_sum_numba(xs, ys, p, 1.5) for _ in range(3)}
    assert len(runs) == 1


@pytest.mark.parametrize("flag, expected", [("1", "numpy"), ("0", "numba" if HAVE_NUMBA else "numpy")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, PORTFOLIO_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from portfolio import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
