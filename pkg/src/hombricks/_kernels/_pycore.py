"""Pure numpy implementations of the F_p kernels.

Used when the compiled extension is unavailable, and as the reference the
compiled code is benchmarked and tested against.
"""
from __future__ import annotations

import numpy as np


def rref_modp(a: np.ndarray, p: int) -> tuple[int, list[int], np.ndarray]:
    a = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return r, pivots, a


def batch_rank_modp(a: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    out = np.empty(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        out[i] = rref_modp(a[i], p)[0]
    return out


def orbit_min_index(points: np.ndarray, actions: np.ndarray, weights: np.ndarray,
                    p: int, chunk: int = 4096) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    out = np.empty(points.shape[0], dtype=np.int64)
    for lo in range(0, points.shape[0], chunk):
        block = points[lo:lo + chunk]
        images = np.einsum("gij,pj->pgi", actions, block) % p
        out[lo:lo + chunk] = (images @ weights).min(axis=1)
    return out


def orbit_indices(point: np.ndarray, actions: np.ndarray, weights: np.ndarray, p: int) -> np.ndarray:
    images = (actions @ np.asarray(point, dtype=np.int64)) % p
    return images @ weights
