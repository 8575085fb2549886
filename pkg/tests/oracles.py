"""Independent brute-force references for the solver tests.

Everything here works in conventional max-plus arithmetic on numpy
arrays and never calls into the package, so oracle and implementation
cannot share a bug.
"""

from __future__ import annotations

import numpy as np


def maxplus_apply(matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Conventional reading of a max-plus matrix-vector product."""
    return np.max(matrix + x[None, :], axis=1)


def chebyshev_error(matrix: np.ndarray, x: np.ndarray,
                    rhs: np.ndarray) -> float:
    return float(np.abs(maxplus_apply(matrix, x) - rhs).max())


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    count = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(count)


def grid_min_one_sided(matrix, rhs, lo=-10.0, hi=10.0, step=0.1) -> float:
    """Minimum Chebyshev error of (matrix) x vs rhs over a full grid in x.

    Supports 1 to 3 unknowns; the three-unknown case sweeps the first
    coordinate in a Python loop over a vectorized plane to stay fast.
    """
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    g = _axis(lo, hi, step)
    m, n = a.shape
    if n == 1:
        values = a[:, 0][:, None] + g[None, :]
        return float(np.abs(values - b[:, None]).max(axis=0).min())
    if n == 2:
        err = None
        for i in range(m):
            row = np.maximum(a[i, 0] + g[:, None], a[i, 1] + g[None, :])
            term = np.abs(row - b[i])
            err = term if err is None else np.maximum(err, term)
        return float(err.min())
    if n == 3:
        planes = [np.maximum(a[i, 1] + g[:, None], a[i, 2] + g[None, :])
                  for i in range(m)]
        best = np.inf
        for x1 in g:
            err = None
            for i in range(m):
                row = np.maximum(a[i, 0] + x1, planes[i])
                term = np.abs(row - b[i])
                err = term if err is None else np.maximum(err, term)
            best = min(best, float(err.min()))
        return best
    raise ValueError("grid oracle handles at most 3 unknowns")


def _image_cloud(matrix: np.ndarray, g: np.ndarray) -> np.ndarray:
    """All max-plus images of grid coefficient vectors, one per row."""
    m, n = matrix.shape
    if n == 1:
        return (matrix[:, 0][None, :] + g[:, None])
    if n == 2:
        cloud = np.maximum(
            matrix[:, 0][None, None, :] + g[:, None, None],
            matrix[:, 1][None, None, :] + g[None, :, None])
        return cloud.reshape(-1, m)
    raise ValueError("two-sided grid oracle handles at most 2 unknowns a side")


def grid_min_two_sided(left, right, lo=-6.0, hi=6.0, step=0.2) -> float:
    """Minimum Chebyshev distance between the two image clouds."""
    a = np.asarray(left, dtype=float)
    b = np.asarray(right, dtype=float)
    g = _axis(lo, hi, step)
    u = _image_cloud(a, g)
    v = _image_cloud(b, g)
    m = a.shape[0]
    best = np.inf
    chunk = 1024
    for start in range(0, u.shape[0], chunk):
        block = u[start:start + chunk]
        dist = np.abs(block[:, None, 0] - v[None, :, 0])
        for k in range(1, m):
            np.maximum(dist, np.abs(block[:, None, k] - v[None, :, k]),
                       out=dist)
        best = min(best, float(dist.min()))
    return best
