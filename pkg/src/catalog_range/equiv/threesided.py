"""SCRC on a path vs. distinct-Y 3-sided counting, and 3D dominance via distinct-Y."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import CategoryGraph, path_graph
from ..engines.color3sided import Color3sidedIndex, build_distinct_y
from ..heavypath import decompose

__all__ = [
    "Dom3dViaDistinctY",
    "colored3sided_to_dom3dcolor",
    "distinctY_to_scrc_path",
    "dom3d_via_distinctY",
    "scrc_path_to_distinctY",
]


def _path_heights(g: CategoryGraph) -> np.ndarray:
    if g.kind != "path" and not (g.is_tree and all(len(c) <= 1 for c in g.children)):
        raise ValueError("category graph must be a path")
    d = decompose(g)
    return np.array([d.height(v) for v in range(g.vertex_count)], dtype=np.int64)


def scrc_path_to_distinctY(xs, colors, g: CategoryGraph):
    """Points on a path-shaped category graph -> 2D points ``(x, h(color))``.

    ``h(v)`` counts the path vertices strictly below ``v``, so ``c`` is a
    sub-category of ``v`` iff ``h(c) <= h(v)``.  Returns ``(points, mapper)``
    with ``mapper(lo, hi, v_q) -> (l, r, t)``.
    """
    h = _path_heights(g)
    xs = np.asarray(xs, dtype=np.int64)
    points = np.column_stack((xs, h[np.asarray(colors, dtype=np.int64)]))

    def mapper(lo, hi, v_q):
        return lo, hi, int(h[v_q])

    return points, mapper


def distinctY_to_scrc_path(points):
    """2D points -> colored points on a path with one vertex per distinct y.

    Vertex ``j`` (0 deepest) stands for the ``j``-th smallest y.  Returns
    ``(xs, colors, graph, mapper)``; ``mapper(l, r, t)`` gives ``(l, r, v)``
    or ``None`` when no y is ``<= t`` (answer 0).
    """
    arr = np.asarray(points if len(points) else np.empty((0, 2)), dtype=np.int64)
    ys = np.unique(arr[:, 1])
    g = path_graph(max(len(ys), 1))
    colors = np.searchsorted(ys, arr[:, 1])

    def mapper(l, r, t):
        k = int(np.searchsorted(ys, t, side="right"))
        return None if k == 0 else (l, r, k - 1)

    return arr[:, 0].copy(), colors, g, mapper


def colored3sided_to_dom3dcolor(points):
    """``(x, y, color)`` -> ``(-x, y, x, color)``; returns ``(points, mapper)``.

    ``mapper(l, r, t)`` gives the dominance corner ``(-l, t, r)``.
    """
    arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
    out = np.column_stack((-arr[:, 0], arr[:, 1], arr[:, 0], arr[:, 2]))

    def mapper(l, r, t):
        return -l, t, r

    return out, mapper


def _ranks(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Dense 1-based ranks; ties broken by input order."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.int64)
    ranks[order] = np.arange(1, len(values) + 1)
    return ranks, values[order]


@dataclass(eq=False)
class Dom3dViaDistinctY:
    """Unweighted 3D dominance counting from two distinct-Y structures.

    Every point ``(x, y, z)`` (coordinates distinct per axis, ranks ``1..n``)
    puts ``(-x, 2z)`` and ``(y, 2z)`` into ``lower`` and ``(-x, 2z)`` and
    ``(y, 2z + 1)`` into ``upper``.  For the range ``[-qx, qy]`` below
    threshold ``2qz + 1``, a dominated point shows both of its values in
    ``upper`` but one in ``lower``; any other point shows the same number in
    both.
    """

    lower: Color3sidedIndex
    upper: Color3sidedIndex
    axes: tuple[np.ndarray, np.ndarray, np.ndarray] | None

    def _to_ranks(self, qx, qy, qz):
        qs = [np.asarray(q, dtype=np.int64) for q in (qx, qy, qz)]
        if self.axes is None:
            return qs
        return [np.searchsorted(s, q, side="right").astype(np.int64)
                for s, q in zip(self.axes, qs)]

    def query_batch(self, qx, qy, qz) -> np.ndarray:
        x, y, z = self._to_ranks(qx, qy, qz)
        out = np.zeros(x.shape, dtype=np.int64)
        ok = (x > 0) & (y > 0) & (z > 0)
        if ok.any():
            l, r, t = -x[ok], y[ok], 2 * z[ok] + 1
            out[ok] = self.upper.query_batch(l, r, t) - self.lower.query_batch(l, r, t)
        return out

    def query(self, qx: int, qy: int, qz: int) -> int:
        return int(self.query_batch(np.array([qx]), np.array([qy]), np.array([qz]))[0])


def dom3d_via_distinctY(points, *, rank_reduce: bool = True) -> Dom3dViaDistinctY:
    """Build the two-structure 3D dominance counter.

    With ``rank_reduce`` (default) arbitrary coordinates are first replaced by
    per-axis ranks, ties broken by input order.  Without it the input must
    already use distinct positive coordinates on every axis.
    """
    arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("expected rows (x, y, z)")
    axes = None
    if rank_reduce:
        cols = [_ranks(arr[:, k]) for k in range(3)]
        arr = np.column_stack([c[0] for c in cols])
        axes = tuple(c[1] for c in cols)
    else:
        for k in range(3):
            if len(np.unique(arr[:, k])) != len(arr):
                raise ValueError("duplicate coordinates")
        if arr.size and arr.min() < 1:
            raise ValueError("coordinates must be positive")
    x, y, z = arr[:, 0], arr[:, 1], arr[:, 2]
    lower = build_distinct_y(np.concatenate((np.column_stack((-x, 2 * z)),
                                             np.column_stack((y, 2 * z)))))
    upper = build_distinct_y(np.concatenate((np.column_stack((-x, 2 * z)),
                                             np.column_stack((y, 2 * z + 1)))))
    return Dom3dViaDistinctY(lower, upper, axes)
