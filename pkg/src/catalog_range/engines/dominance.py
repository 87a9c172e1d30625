"""Signed-weight 2D and 3D dominance counting.

A dominance query sums the weights of points that are ``<=`` the query corner
in every coordinate (inclusive on all sides).

2D: points are ordered by x and their y-ranks go into a weighted wavelet
matrix, so a query is one predecessor search per axis plus ``O(log n)``
rank steps.  3D: the x-order is cut into aligned blocks of size ``2**b`` for
every ``b``; each level stores one wavelet matrix over z-ranks with the
points ordered by ``(block, y)``.  A prefix of the x-order splits into at most
one block per level, and a block restricted to ``y <= qy`` is a contiguous
run of its level's sequence.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..core import check_weights
from ._wavelet import bits_for, build_levels, prefix_less

__all__ = [
    "Dominance2Index",
    "Dominance3Index",
    "build_dominance2",
    "build_dominance3",
    "query_dominance2",
    "query_dominance3",
]


def _as_points(points, dims: int) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(points if len(points) else np.empty((0, dims + 1)), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] not in (dims, dims + 1):
        raise ValueError(f"expected rows of {dims} coordinates plus a weight")
    coords = arr[:, :dims]
    weights = arr[:, dims] if arr.shape[1] == dims + 1 else np.ones(len(arr), dtype=np.int64)
    return coords, check_weights(weights)


def _merge_duplicates(coords: np.ndarray, weights: np.ndarray):
    """Sum weights of coincident points and drop zero totals."""
    if coords.shape[0] == 0:
        return coords, weights
    uniq, inv = np.unique(coords, axis=0, return_inverse=True)
    w = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(w, inv.ravel(), weights)
    keep = w != 0
    return uniq[keep], w[keep]


class Dominance2Index:
    """Static 2D dominance-sum structure.

    Parameters
    ----------
    points : array-like of shape (N, 3) or (N, 2)
        Rows ``(x, y, w)``; a missing weight column means weight 1.
    """

    def __init__(self, points):
        coords, w = _as_points(points, 2)
        coords, w = _merge_duplicates(coords, w)
        order = np.lexsort((coords[:, 1], coords[:, 0]))
        coords, w = coords[order], w[order]
        self.xs = np.ascontiguousarray(coords[:, 0])
        self.ys = np.unique(coords[:, 1])
        vals = np.searchsorted(self.ys, coords[:, 1])
        self.rank0, self.wsum = build_levels(vals, w, bits_for(len(self.ys)))

    @property
    def size(self) -> int:
        """Number of stored (merged, nonzero) points."""
        return len(self.xs)

    def query(self, qx: int, qy: int) -> int:
        k = int(np.searchsorted(self.xs, qx, side="right"))
        t = int(np.searchsorted(self.ys, qy, side="right"))
        return int(prefix_less(self.rank0, self.wsum, k, t))

    def query_batch(self, qx, qy) -> np.ndarray:
        ks = np.searchsorted(self.xs, np.asarray(qx, dtype=np.int64), side="right")
        ts = np.searchsorted(self.ys, np.asarray(qy, dtype=np.int64), side="right")
        return _batch2(self.rank0, self.wsum, ks.astype(np.int64), ts.astype(np.int64))


@njit(cache=True, nogil=True)
def _batch2(rank0, wsum, ks, ts):
    out = np.empty(ks.shape[0], dtype=np.int64)
    for i in range(ks.shape[0]):
        out[i] = prefix_less(rank0, wsum, ks[i], ts[i])
    return out


class Dominance3Index:
    """Static 3D dominance-sum structure over rows ``(x, y, z, w)``."""

    def __init__(self, points):
        coords, w = _as_points(points, 3)
        coords, w = _merge_duplicates(coords, w)
        order = np.argsort(coords[:, 0], kind="stable")
        coords, w = coords[order], w[order]
        n = len(w)
        self.xs = np.ascontiguousarray(coords[:, 0])
        self.ys = np.unique(coords[:, 1])
        self.zs = np.unique(coords[:, 2])
        yr = np.searchsorted(self.ys, coords[:, 1]).astype(np.int64)
        zr = np.searchsorted(self.zs, coords[:, 2]).astype(np.int64)
        self.sigma_y = max(1, len(self.ys))
        nlev = max(1, n.bit_length())
        zbits = bits_for(len(self.zs))
        self.keys = np.zeros((nlev, n), dtype=np.int64)
        self.rank0 = np.zeros((nlev, zbits, n + 1), dtype=np.int32)
        self.wsum = np.zeros((nlev, zbits + 1, n + 1), dtype=np.int64)
        idx = np.arange(n, dtype=np.int64)
        for b in range(nlev):
            key = (idx >> b) * self.sigma_y + yr
            perm = np.argsort(key, kind="stable")
            self.keys[b] = key[perm]
            self.rank0[b], self.wsum[b] = build_levels(zr[perm], w[perm], zbits)

    @property
    def size(self) -> int:
        return len(self.xs)

    def _ranks(self, qx, qy, qz):
        k = np.searchsorted(self.xs, qx, side="right")
        ty = np.searchsorted(self.ys, qy, side="right")
        tz = np.searchsorted(self.zs, qz, side="right")
        return k, ty, tz

    def query(self, qx: int, qy: int, qz: int) -> int:
        k, ty, tz = self._ranks(qx, qy, qz)
        return int(_query3(self.keys, self.rank0, self.wsum, self.sigma_y, int(k), int(ty), int(tz)))

    def query_batch(self, qx, qy, qz) -> np.ndarray:
        k, ty, tz = self._ranks(np.asarray(qx, dtype=np.int64), np.asarray(qy, dtype=np.int64),
                                np.asarray(qz, dtype=np.int64))
        return _batch3(self.keys, self.rank0, self.wsum, self.sigma_y,
                       k.astype(np.int64), ty.astype(np.int64), tz.astype(np.int64))


@njit(cache=True, nogil=True)
def _query3(keys, rank0, wsum, sigma_y, k, ty, tz):
    if k <= 0 or ty <= 0 or tz <= 0:
        return 0
    res = 0
    for b in range(keys.shape[0]):
        if (k >> b) & 1:
            base = ((k >> b) - 1) * sigma_y
            row = keys[b]
            p0 = np.searchsorted(row, base)
            p1 = np.searchsorted(row, base + ty)
            if p1 > p0:
                res += prefix_less(rank0[b], wsum[b], p1, tz) - prefix_less(rank0[b], wsum[b], p0, tz)
    return res


@njit(cache=True, nogil=True)
def _batch3(keys, rank0, wsum, sigma_y, ks, tys, tzs):
    out = np.empty(ks.shape[0], dtype=np.int64)
    for i in range(ks.shape[0]):
        out[i] = _query3(keys, rank0, wsum, sigma_y, ks[i], tys[i], tzs[i])
    return out


def build_dominance2(points) -> Dominance2Index:
    return Dominance2Index(points)


def query_dominance2(idx: Dominance2Index, qx: int, qy: int) -> int:
    return idx.query(qx, qy)


def build_dominance3(points) -> Dominance3Index:
    return Dominance3Index(points)


def query_dominance3(idx: Dominance3Index, qx: int, qy: int, qz: int) -> int:
    return idx.query(qx, qy, qz)
