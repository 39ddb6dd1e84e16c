"""Hot numeric loops: point-set diameter and the Rao-Stirling pair sum.

Each kernel exists twice: a numba ``@njit`` version and a numpy/Python
version. ``diameter_sq`` and ``rao_pair_sum`` dispatch on
:data:`portfolio._accel.USE_NUMBA`; the explicit ``*_numba`` / ``*_numpy``
names stay importable so tests and the benchmark can compare them.
"""
import math

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA

if HAVE_NUMBA:
    from numba import njit
else:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def sorted_unique_points(xs, ys):
    """Lexicographically sorted (x, then y) copy of the points with exact duplicates dropped."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    order = np.lexsort((ys, xs))
    sx, sy = xs[order], ys[order]
    if sx.size > 1:
        keep = np.empty(sx.size, dtype=bool)
        keep[0] = True
        keep[1:] = (sx[1:] != sx[:-1]) | (sy[1:] != sy[:-1])
        sx, sy = sx[keep], sy[keep]
    return sx, sy


# -- convex hull + antipodal scan ------------------------------------------

def _hull_diameter_sq(sx, sy):
    # Andrew's monotone chain (collinear points dropped), CCW order, then the
    # rotating-calipers scan over antipodal vertex pairs.
    n = len(sx)
    if n == 1:
        return 0.0
    hull = np.empty(2 * n, dtype=np.int64)
    k = 0
    for i in range(n):
        while k >= 2:
            a = hull[k - 2]
            b = hull[k - 1]
            cross = (sx[b] - sx[a]) * (sy[i] - sy[a]) - (sy[b] - sy[a]) * (sx[i] - sx[a])
            if cross <= 0.0:
                k -= 1
            else:
                break
        hull[k] = i
        k += 1
    lower_len = k + 1
    for i in range(n - 2, -1, -1):
        while k >= lower_len:
            a = hull[k - 2]
            b = hull[k - 1]
            cross = (sx[b] - sx[a]) * (sy[i] - sy[a]) - (sy[b] - sy[a]) * (sx[i] - sx[a])
            if cross <= 0.0:
                k -= 1
            else:
                break
        hull[k] = i
        k += 1
    m = k - 1  # last vertex repeats the first
    if m <= 2:
        # all points collinear: the hull is the segment between the extremes
        a = hull[0]
        b = hull[1]
        dx = sx[a] - sx[b]
        dy = sy[a] - sy[b]
        return dx * dx + dy * dy

    best = 0.0
    j = 1
    for i in range(m):
        a = hull[i]
        b = hull[(i + 1) % m]
        ex = sx[b] - sx[a]
        ey = sy[b] - sy[a]
        while True:
            c = hull[j]
            d = hull[(j + 1) % m]
            area_c = ex * (sy[c] - sy[a]) - ey * (sx[c] - sx[a])
            area_d = ex * (sy[d] - sy[a]) - ey * (sx[d] - sx[a])
            if area_d > area_c:
                j = (j + 1) % m
            else:
                break
        c = hull[j]
        dx = sx[a] - sx[c]
        dy = sy[a] - sy[c]
        d2 = dx * dx + dy * dy
        if d2 > best:
            best = d2
        dx = sx[b] - sx[c]
        dy = sy[b] - sy[c]
        d2 = dx * dx + dy * dy
        if d2 > best:
            best = d2
    return best


_hull_diameter_sq_jit = njit(cache=True)(_hull_diameter_sq)


def diameter_sq_numba(xs, ys):
    sx, sy = sorted_unique_points(xs, ys)
    return float(_hull_diameter_sq_jit(sx, sy))


def diameter_sq_numpy(xs, ys):
    sx, sy = sorted_unique_points(xs, ys)
    # plain Python floats keep the loop tolerable without the JIT
    return float(_hull_diameter_sq(sx.tolist(), sy.tolist()))


def diameter_sq_naive(xs, ys):
    """O(n^2) reference scan; only meant for tests and benchmarks."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    best = 0.0
    for i in range(xs.size - 1):
        dx = xs[i] - xs[i + 1:]
        dy = ys[i] - ys[i + 1:]
        row = dx * dx + dy * dy
        if row.size:
            best = max(best, float(row.max()))
    return best


# -- Rao-Stirling pair sum ---------------------------------------------------

@njit(cache=True)
def _rao_pair_sum_jit(xs, ys, p, diameter):
    # Neumaier-compensated sum over i < j in ascending order, doubled at the end
    total = 0.0
    comp = 0.0
    n = xs.shape[0]
    for i in range(n - 1):
        xi = xs[i]
        yi = ys[i]
        pi = p[i]
        for j in range(i + 1, n):
            dx = xi - xs[j]
            dy = yi - ys[j]
            term = pi * p[j] * (math.sqrt(dx * dx + dy * dy) / diameter)
            t = total + term
            if abs(total) >= abs(term):
                comp += (total - t) + term
            else:
                comp += (term - t) + total
            total = t
    return 2.0 * (total + comp)


def rao_pair_sum_numba(xs, ys, p, diameter):
    return float(_rao_pair_sum_jit(
        np.ascontiguousarray(xs, dtype=np.float64),
        np.ascontiguousarray(ys, dtype=np.float64),
        np.ascontiguousarray(p, dtype=np.float64),
        float(diameter),
    ))


def rao_pair_sum_numpy(xs, ys, p, diameter):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    row_sums = []
    for i in range(xs.size - 1):
        dx = xs[i] - xs[i + 1:]
        dy = ys[i] - ys[i + 1:]
        terms = p[i] * p[i + 1:] * (np.sqrt(dx * dx + dy * dy) / diameter)
        row_sums.append(float(terms.sum()))
    return 2.0 * math.fsum(row_sums)


if USE_NUMBA:
    diameter_sq = diameter_sq_numba
    rao_pair_sum = rao_pair_sum_numba
    BACKEND = "numba"
else:
    diameter_sq = diameter_sq_numpy
    rao_pair_sum = rao_pair_sum_numpy
    BACKEND = "numpy"
