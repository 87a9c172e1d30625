"""Weighted wavelet matrix: prefix sums of weights of values below a threshold.

For a sequence ``v[0..N)`` of small nonnegative integers with signed weights,
``prefix_less(k, t)`` returns the total weight of positions ``i < k`` with
``v[i] < t`` in ``O(log sigma)`` steps.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def build_levels(values: np.ndarray, weights: np.ndarray, nbits: int):
    """Return ``(rank0, wsum)`` arrays describing the matrix.

    ``rank0[l, i]`` counts zero bits among the first ``i`` entries at level
    ``l``; ``wsum[l, i]`` is the weight prefix of the sequence *entering*
    level ``l`` (``wsum[nbits]`` is the fully sorted sequence).
    """
    n = values.size
    rank0 = np.zeros((nbits, n + 1), dtype=np.int32)
    wsum = np.zeros((nbits + 1, n + 1), dtype=np.int64)
    cur_v = values.astype(np.int64, copy=True)
    cur_w = weights.astype(np.int64, copy=True)
    np.cumsum(cur_w, out=wsum[0, 1:])
    for lvl in range(nbits):
        zero = ((cur_v >> (nbits - 1 - lvl)) & 1) == 0
        np.cumsum(zero, out=rank0[lvl, 1:])
        order = np.concatenate((np.flatnonzero(zero), np.flatnonzero(~zero)))
        cur_v = cur_v[order]
        cur_w = cur_w[order]
        np.cumsum(cur_w, out=wsum[lvl + 1, 1:])
    return rank0, wsum


@njit(cache=True, nogil=True)
def prefix_less(rank0, wsum, k, t):
    nbits = rank0.shape[0]
    if k <= 0 or t <= 0:
        return 0
    if t >= (1 << nbits):
        return wsum[0, k]
    s = 0
    e = k
    res = 0
    for lvl in range(nbits):
        zs = rank0[lvl, s]
        ze = rank0[lvl, e]
        if (t >> (nbits - 1 - lvl)) & 1:
            res += wsum[lvl + 1, ze] - wsum[lvl + 1, zs]
            nz = rank0[lvl, rank0.shape[1] - 1]
            s = nz + s - zs
            e = nz + e - ze
        else:
            s = zs
            e = ze
        if s == e:
            break
    return res


@njit(cache=True, nogil=True)
def prefix_less_batch(rank0, wsum, ks, ts):
    out = np.empty(ks.shape[0], dtype=np.int64)
    for i in range(ks.shape[0]):
        out[i] = prefix_less(rank0, wsum, ks[i], ts[i])
    return out


def bits_for(sigma: int) -> int:
    """Levels needed so every value in ``[0, sigma)`` fits."""
    return max(1, int(sigma - 1).bit_length())
