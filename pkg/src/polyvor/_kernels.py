"""Raster classification kernels (the only hot loop in the package).

Label every pixel of a grid over the simplex with the index of the nearest
curve sample under a polyhedral norm, the norm being evaluated as the max
of its facet functionals on the rational-chart difference vector.

Two interchangeable implementations:

* a numba ``@njit(parallel=True, cache=True)`` kernel (used when numba
  imports), and
* a pure-numpy row-blocked fallback.

Both follow the exact same elementwise expression order (scalar multiply,
add, running max/min; no dot products, no fastmath), so their outputs are
bit-identical and the test suite asserts full label equality.

Environment:
    POLYVOR_NO_NUMBA=1   force the numpy fallback (checked per call)
    POLYVOR_THREADS=N    cap the numba thread count
"""

import math
import os

import numpy as np

try:
    from numba import njit, prange
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False
    prange = range

OUTSIDE = -1
TIE = -2

SQRT3_2 = math.sqrt(3.0) / 2.0
INV_H = 2.0 / math.sqrt(3.0)


def _classify_grid_loop(res, a0, a1, s1, s2, tie_tol, labels):
    """Shared loop body; jitted when numba is available.

    Pixel centers live on the plotting-chart box [0,1] x [0,sqrt(3)/2],
    row iy = 0 at the bottom.  Distance to sample kk is
    max_f(a0[f]*(s1[kk]-t1) + a1[f]*(s2[kk]-t2)) in the rational chart.
    """
    nf = a0.shape[0]
    nk = s1.shape[0]
    dx = 1.0 / res
    dy = SQRT3_2 / res
    for iy in prange(res):
        py = (iy + 0.5) * dy
        t2 = py * INV_H
        for ix in range(res):
            px = (ix + 0.5) * dx
            t1 = px - 0.5 * t2
            t3 = 1.0 - t1 - t2
            if t1 < 0.0 or t2 < 0.0 or t3 < 0.0:
                labels[iy, ix] = OUTSIDE
                continue
            best = np.inf
            second = np.inf
            arg = -1
            for kk in range(nk):
                d1 = s1[kk] - t1
                d2 = s2[kk] - t2
                dist = a0[0] * d1 + a1[0] * d2
                for ff in range(1, nf):
                    v = a0[ff] * d1 + a1[ff] * d2
                    if v > dist:
                        dist = v
                if dist < best:
                    second = best
                    best = dist
                    arg = kk
                elif dist < second:
                    second = dist
            if second - best < tie_tol:
                labels[iy, ix] = TIE
            else:
                labels[iy, ix] = arg


if HAVE_NUMBA:
    _classify_grid_jit = njit(parallel=True, cache=True)(_classify_grid_loop)


def classify_grid_numpy(res, a0, a1, s1, s2, tie_tol):
    """Pure-numpy fallback, row at a time; bit-identical to the jit kernel."""
    labels = np.full((res, res), OUTSIDE, dtype=np.int64)
    dx = 1.0 / res
    dy = SQRT3_2 / res
    px = (np.arange(res) + 0.5) * dx
    for iy in range(res):
        py = (iy + 0.5) * dy
        t2 = py * INV_H
        t1 = px - 0.5 * t2
        t3 = 1.0 - t1 - t2
        inside = (t1 >= 0.0) & (t3 >= 0.0) & (t2 >= 0.0)
        if not inside.any():
            continue
        t1in = t1[inside]
        d1 = s1[None, :] - t1in[:, None]
        d2 = (s2 - t2)[None, :]
        dist = a0[0] * d1 + a1[0] * d2
        for ff in range(1, a0.shape[0]):
            np.maximum(dist, a0[ff] * d1 + a1[ff] * d2, out=dist)
        rows = np.arange(dist.shape[0])
        arg = np.argmin(dist, axis=1)
        best = dist[rows, arg]
        dist[rows, arg] = np.inf
        second = dist.min(axis=1)
        lab = arg.astype(np.int64)
        lab[second - best < tie_tol] = TIE
        labels[iy, inside] = lab
    return labels


def classify_points_numpy(t1, t2, a0, a1, s1, s2, tie_tol):
    """Classify loose rational-chart points (no grid); same arithmetic.

    Returns (labels, best, second) so callers can inspect margins.
    """
    t1 = np.atleast_1d(np.asarray(t1, dtype=np.float64))
    t2 = np.atleast_1d(np.asarray(t2, dtype=np.float64))
    d1 = s1[None, :] - t1[:, None]
    d2 = s2[None, :] - t2[:, None]
    dist = a0[0] * d1 + a1[0] * d2
    for ff in range(1, a0.shape[0]):
        np.maximum(dist, a0[ff] * d1 + a1[ff] * d2, out=dist)
    rows = np.arange(dist.shape[0])
    arg = np.argmin(dist, axis=1)
    best = dist[rows, arg].copy()
    dist[rows, arg] = np.inf
    second = dist.min(axis=1)
    lab = arg.astype(np.int64)
    lab[second - best < tie_tol] = TIE
    return lab, best, second


def _numba_wanted() -> bool:
    return HAVE_NUMBA and os.environ.get("POLYVOR_NO_NUMBA", "") not in ("1", "true", "yes")


def backend_name() -> str:
    """Which kernel a classify_grid call would use right now."""
    return "numba" if _numba_wanted() else "numpy"


def classify_grid(res, a0, a1, s1, s2, tie_tol):
    """Dispatch to the jit kernel or the numpy fallback (env-controlled)."""
    a0 = np.ascontiguousarray(a0, dtype=np.float64)
    a1 = np.ascontiguousarray(a1, dtype=np.float64)
    s1 = np.ascontiguousarray(s1, dtype=np.float64)
    s2 = np.ascontiguousarray(s2, dtype=np.float64)
    if _numba_wanted():
        req = os.environ.get("POLYVOR_THREADS")
        if req:
            cap = numba.config.NUMBA_NUM_THREADS
            numba.set_num_threads(max(1, min(int(req), cap)))
        labels = np.empty((res, res), dtype=np.int64)
        _classify_grid_jit(res, a0, a1, s1, s2, tie_tol, labels)
        return labels
    return classify_grid_numpy(res, a0, a1, s1, s2, tie_tol)
