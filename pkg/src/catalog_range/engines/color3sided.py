"""3-sided color counting: distinct colors in ``[l, r] x (-inf, t]``.

Points are inserted in ascending y.  At any moment the live structure is the
1D previous-occurrence pairing ``(x, prev)`` of the inserted points, so a
query at threshold ``t`` is a 1D color count on the version containing every
point with ``y <= t``.  Each pair is recorded with its birth and death time;
versions are then a third dominance coordinate (``+w`` at birth, ``-w`` at
death) over one static 3D structure.
"""

from __future__ import annotations

import bisect
from typing import Mapping

import numpy as np

from .dominance import Dominance3Index

__all__ = ["Color3sidedIndex", "build_color3sided", "query_color3sided", "build_distinct_y"]


class Color3sidedIndex:
    """Static 3-sided color counting over ``(x, y, color)`` rows.

    Parameters
    ----------
    points : array-like of shape (N, 3)
    weights : mapping, optional
        Per-color weights for the weighted variant.
    """

    def __init__(self, points, weights: Mapping[int, int] | None = None):
        arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("expected rows (x, y, color)")
        order = np.argsort(arr[:, 1], kind="stable")
        arr = arr[order]
        self.ys = arr[:, 1].copy()
        self.min_x = int(arr[:, 0].min()) if len(arr) else 0
        sentinel = self.min_x - 1

        live: dict[int, list[int]] = {}
        events = []
        n_pairs = 0

        def weight(c):
            return 1 if weights is None else int(weights[c])

        for t, (x, _, c) in enumerate(arr.tolist(), start=1):
            xs = live.setdefault(c, [])
            i = bisect.bisect_left(xs, x)
            if i < len(xs) and xs[i] == x:
                continue
            a = xs[i - 1] if i > 0 else sentinel
            if i < len(xs):
                b = xs[i]
                events.append((b, a, t, -weight(c)))
                events.append((b, x, t, weight(c)))
                n_pairs += 1
            events.append((x, a, t, weight(c)))
            n_pairs += 1
            xs.insert(i, x)

        self.n_points = len(arr)
        self.n_pairs = n_pairs
        self.dominance = Dominance3Index(np.array(events, dtype=np.int64).reshape(-1, 4))

    def _version(self, t):
        return np.searchsorted(self.ys, t, side="right")

    def query(self, l: int, r: int, t: int) -> int:
        return int(self.query_batch(np.array([l]), np.array([r]), np.array([t]))[0])

    def query_batch(self, l, r, t) -> np.ndarray:
        l = np.maximum(np.asarray(l, dtype=np.int64), self.min_x)
        r = np.asarray(r, dtype=np.int64)
        k = self._version(np.asarray(t, dtype=np.int64)).astype(np.int64)
        out = np.zeros(l.shape, dtype=np.int64)
        ok = (l <= r) & (k > 0)
        if ok.any():
            lb = l[ok] - 1
            d = self.dominance
            out[ok] = d.query_batch(r[ok], lb, k[ok]) - d.query_batch(lb, lb, k[ok])
        return out


def build_color3sided(points, weights=None) -> Color3sidedIndex:
    return Color3sidedIndex(points, weights)


def build_distinct_y(points) -> Color3sidedIndex:
    """Distinct y-coordinate counting: each point's color is its own y."""
    arr = np.asarray(points if len(points) else np.empty((0, 2)), dtype=np.int64)
    return Color3sidedIndex(np.column_stack((arr[:, 0], arr[:, 1], arr[:, 1])))


def query_color3sided(idx: Color3sidedIndex, l: int, r: int, t: int) -> int:
    return idx.query(l, r, t)
