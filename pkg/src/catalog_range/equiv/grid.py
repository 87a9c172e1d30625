"""Recursive sqrt-grid dominance structure.

A node over ``m`` points cuts its own x- and y-rank orders into blocks of
``ceil(sqrt m)`` points (columns and rows), keeps 2D prefix sums of the
cell weights, and recurses into one child per column and one per row.  A
query falling in cell ``(i, j)`` is the prefix sum of the cells strictly
left and below, plus the column-``i`` child (which owns the cell itself),
plus the row-``j`` child restricted to columns left of ``i``.  Children work
on the parent's rank coordinates, so ties never straddle a block edge.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from ..engines.dominance import Dominance2Index

__all__ = ["GridIndex", "build_grid", "query_grid"]


class GridIndex:
    """Dominance sums through ``depth`` levels of grid recursion.

    Parameters
    ----------
    points : array-like of shape (m, 3)
        Rows ``(x, y, w)``.
    depth : int
        Number of grid levels above the leaves (0 makes the root a leaf).
    leaf : callable, optional
        Builds the structure used below the last grid level from an ``(k, 3)``
        array; it must provide ``query_batch(qx, qy)``.  Defaults to
        :class:`Dominance2Index`.
    """

    def __init__(self, points, depth: int = 1, leaf: Callable | None = None):
        arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("expected rows (x, y, w)")
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        self.depth = depth
        self.size = len(arr)
        self._leaf = leaf or Dominance2Index
        self.leaf = None
        self.columns: list[GridIndex] = []
        self.rows: list[GridIndex] = []
        if depth == 0 or self.size == 0:
            self.leaf = self._leaf(arr)
            return

        m = self.size
        self.block = math.isqrt(m - 1) + 1
        xorder = np.argsort(arr[:, 0], kind="stable")
        yorder = np.argsort(arr[:, 1], kind="stable")
        self.xs = arr[xorder, 0]
        self.ys = arr[yorder, 1]
        xrank = np.empty(m, dtype=np.int64)
        yrank = np.empty(m, dtype=np.int64)
        xrank[xorder] = np.arange(1, m + 1)
        yrank[yorder] = np.arange(1, m + 1)
        col = (xrank - 1) // self.block
        row = (yrank - 1) // self.block
        blocks = -(-m // self.block)

        cells = np.zeros((blocks + 1, blocks + 1), dtype=np.int64)
        np.add.at(cells, (col + 1, row + 1), arr[:, 2])
        self.table = cells.cumsum(axis=0).cumsum(axis=1)

        ranked = np.column_stack((xrank, yrank, arr[:, 2]))
        for b in range(blocks):
            self.columns.append(GridIndex(ranked[col == b], depth - 1, self._leaf))
            self.rows.append(GridIndex(ranked[row == b], depth - 1, self._leaf))

    @property
    def node_count(self) -> int:
        return 1 + sum(c.node_count for c in self.columns + self.rows)

    def query(self, qx: int, qy: int) -> int:
        return int(self.query_batch(np.array([qx]), np.array([qy]))[0])

    def query_batch(self, qx, qy) -> np.ndarray:
        qx = np.asarray(qx, dtype=np.int64)
        qy = np.asarray(qy, dtype=np.int64)
        if self.leaf is not None:
            if self.size == 0:
                return np.zeros(qx.shape, dtype=np.int64)
            return np.asarray(self.leaf.query_batch(qx, qy), dtype=np.int64)
        kx = np.searchsorted(self.xs, qx, side="right").astype(np.int64)
        ky = np.searchsorted(self.ys, qy, side="right").astype(np.int64)
        out = np.zeros(qx.shape, dtype=np.int64)
        live = (kx > 0) & (ky > 0)
        i = (kx - 1) // self.block
        j = (ky - 1) // self.block
        out[live] = self.table[i[live], j[live]]
        for b in np.unique(i[live]):
            m = live & (i == b)
            out[m] += self.columns[b].query_batch(kx[m], ky[m])
        for b in np.unique(j[live]):
            m = live & (j == b) & (i > 0)
            if m.any():
                out[m] += self.rows[b].query_batch(i[m] * self.block, ky[m])
        return out


def build_grid(points, s: int, leaf: Callable | None = None) -> GridIndex:
    return GridIndex(points, s, leaf)


def query_grid(idx: GridIndex, qx: int, qy: int) -> int:
    return idx.query(qx, qy)
