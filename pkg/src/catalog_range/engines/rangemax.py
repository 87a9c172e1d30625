"""Sparse-table range maximum with leftmost argmax on ties."""

from __future__ import annotations

import numpy as np

__all__ = ["RangeMaxIndex", "build_rangemax", "query_rangemax"]


class RangeMaxIndex:
    """``O(n log n)`` table, ``O(1)`` query over 1-based inclusive ranges."""

    def __init__(self, values):
        vals = np.asarray(values, dtype=np.int64).ravel()
        if vals.size == 0:
            raise ValueError("range max needs a nonempty array")
        self.values = vals
        n = vals.size
        table = [np.arange(n, dtype=np.int64)]
        span = 1
        while 2 * span <= n:
            prev = table[-1]
            left, right = prev[: n - 2 * span + 1], prev[span: n - span + 1]
            table.append(np.where(vals[left] >= vals[right], left, right))
            span *= 2
        self.table = table

    def __len__(self):
        return self.values.size

    def _argmax(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        # 0-based inclusive bounds, lo <= hi
        k = np.floor(np.log2(hi - lo + 1)).astype(np.int64)
        out = np.empty(lo.shape, dtype=np.int64)
        for lvl in np.unique(k):
            m = k == lvl
            row = self.table[lvl]
            left = row[lo[m]]
            right = row[hi[m] - (1 << int(lvl)) + 1]
            out[m] = np.where(self.values[left] >= self.values[right], left, right)
        return out

    def query(self, lo: int, hi: int) -> tuple[int, int] | None:
        """``(max value, position)`` over ``[lo, hi]``, or ``None`` when empty."""
        lo, hi = max(int(lo), 1), min(int(hi), len(self))
        if lo > hi:
            return None
        i = int(self._argmax(np.array([lo - 1]), np.array([hi - 1]))[0])
        return int(self.values[i]), i + 1

    def query_values(self, lo, hi, empty: int = 0) -> np.ndarray:
        """Vectorized maxima; empty ranges yield ``empty``."""
        lo = np.maximum(np.asarray(lo, dtype=np.int64), 1)
        hi = np.minimum(np.asarray(hi, dtype=np.int64), len(self))
        out = np.full(lo.shape, empty, dtype=np.int64)
        ok = lo <= hi
        if ok.any():
            out[ok] = self.values[self._argmax(lo[ok] - 1, hi[ok] - 1)]
        return out


def build_rangemax(values) -> RangeMaxIndex:
    return RangeMaxIndex(values)


def query_rangemax(idx: RangeMaxIndex, lo: int, hi: int):
    return idx.query(lo, hi)
