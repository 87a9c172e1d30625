"""Hierarchical color counting on category trees.

Pipeline: heavy-path levels -> one sum-max instance per level (color = heavy
path, weight = prefix weight down to where the point's root path leaves that
heavy path) -> one stabbing rectangle per point -> four signed corner points
-> a single 2D dominance index.  Heavy-path ids are unique across levels, so
all levels share one dominance index and one query.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._validation import check_is_fitted, check_tree
from .base import BaseEstimator, IntervalCounterMixin
from .core import (CategoryGraph, IntervalQuery, RankedPointSet, SumMaxInstance,
                   WeightedPoint2D)
from .engines.dominance import Dominance2Index
from .engines.rangemax import RangeMaxIndex
from .heavypath import HeavyPathDecomposition, decompose, lowest_intersection

__all__ = [
    "HccPathIndex",
    "HccTreeIndex",
    "StabbingRectangle",
    "build_hcc_tree",
    "build_summax_instance",
    "hcc_on_path",
    "query_hcc_tree",
    "rectangles_to_points",
    "summax_to_rectangles",
]


class StabbingRectangle(tuple):
    """Closed rectangle ``[x1, x2] x [y1, y2]`` with weight ``w``."""

    __slots__ = ()
    _fields = ("x1", "x2", "y1", "y2", "w")

    def __new__(cls, x1, x2, y1, y2, w):
        return super().__new__(cls, (int(x1), int(x2), int(y1), int(y2), int(w)))

    x1 = property(lambda self: self[0])
    x2 = property(lambda self: self[1])
    y1 = property(lambda self: self[2])
    y2 = property(lambda self: self[3])
    w = property(lambda self: self[4])

    def contains(self, a: int, b: int) -> bool:
        return self.x1 <= a <= self.x2 and self.y1 <= b <= self.y2

    def __repr__(self):
        return "StabbingRectangle(x1={}, x2={}, y1={}, y2={}, w={})".format(*self)


def build_summax_instance(pts: RankedPointSet, g: CategoryGraph,
                          d: HeavyPathDecomposition, i: int) -> SumMaxInstance:
    """Level-``i`` sub-problem: color = heavy path id, weight = its prefix weight."""
    out = []
    for pos, c in zip(pts.positions.tolist(), pts.colors.tolist()):
        hit = lowest_intersection(d, c, i)
        if hit is not None:
            out.append((pos, hit.path, hit.prefix))
    return SumMaxInstance(tuple(out), pts.n)


@njit(cache=True)
def _stronger_neighbors(pos, col, w, n):
    # inputs sorted by (color, position)
    m = pos.shape[0]
    left = np.zeros(m, dtype=np.int64)
    right = np.full(m, n + 1, dtype=np.int64)
    stack = np.empty(m, dtype=np.int64)
    start = 0
    while start < m:
        end = start
        while end < m and col[end] == col[start]:
            end += 1
        top = 0
        for i in range(start, end):
            # strictly heavier to the left; ties lose to the later position
            while top > 0 and w[stack[top - 1]] <= w[i]:
                top -= 1
            if top > 0:
                left[i] = pos[stack[top - 1]]
            stack[top] = i
            top += 1
        top = 0
        for i in range(end - 1, start - 1, -1):
            while top > 0 and w[stack[top - 1]] < w[i]:
                top -= 1
            if top > 0:
                right[i] = pos[stack[top - 1]]
            stack[top] = i
            top += 1
        start = end
    return left, right


def _rectangle_arrays(pos, col, w, n):
    order = np.lexsort((pos, col))
    pos, col, w = pos[order], col[order], w[order]
    left, right = _stronger_neighbors(pos, col, w, n)
    return left + 1, pos, pos, right - 1, w


def summax_to_rectangles(inst: SumMaxInstance) -> list[StabbingRectangle]:
    """One rectangle per point: the query corners ``(lo, hi)`` at which it is
    its color's representative maximum."""
    if not inst.points:
        return []
    arr = np.asarray(inst.points, dtype=np.int64)
    cols = _rectangle_arrays(arr[:, 0], arr[:, 1], arr[:, 2], inst.n)
    # back to input order
    order = np.lexsort((arr[:, 0], arr[:, 1]))
    rects = [None] * len(order)
    for slot, r in zip(order.tolist(), zip(*(c.tolist() for c in cols))):
        rects[slot] = StabbingRectangle(*r)
    return rects


def _corner_points(x1, x2, y1, y2, w) -> np.ndarray:
    return np.concatenate((
        np.column_stack((x1, y1, w)),
        np.column_stack((x2 + 1, y2 + 1, w)),
        np.column_stack((x1, y2 + 1, -w)),
        np.column_stack((x2 + 1, y1, -w)),
    ))


def rectangles_to_points(rects) -> list[WeightedPoint2D]:
    """Four signed corners per rectangle; a dominance query at ``(a, b)``
    then picks up ``w`` exactly when ``(a, b)`` lies in the rectangle."""
    if not rects:
        return []
    arr = np.asarray(rects, dtype=np.int64)
    pts = _corner_points(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4])
    return [WeightedPoint2D(*p) for p in pts.tolist()]


class HccTreeIndex(IntervalCounterMixin, BaseEstimator):
    """HCC on a category tree.

    Parameters
    ----------
    graph : CategoryGraph
        Must be a rooted tree (kinds path, tree or caterpillar).
    weighted : bool, default False
        Sum vertex weights instead of counting vertices.

    Attributes
    ----------
    decomposition_ : HeavyPathDecomposition
    n_rectangles_ : int
    dominance_ : Dominance2Index
    """

    def __init__(self, graph: CategoryGraph, weighted: bool = False):
        self.graph = graph
        self.weighted = weighted

    def _fit_ranked(self, points: RankedPointSet):
        g = self.graph
        check_tree(g)
        weights = g.weights if self.weighted else (1,) * g.vertex_count
        d = decompose(g, weights)
        pos, col, w = [], [], []
        for r, c in enumerate(points.colors.tolist(), start=1):
            for hit in d.chain(c):
                if hit.prefix:
                    pos.append(r)
                    col.append(hit.path)
                    w.append(hit.prefix)
        pos = np.array(pos, dtype=np.int64)
        rects = _rectangle_arrays(pos, np.array(col, dtype=np.int64),
                                  np.array(w, dtype=np.int64), points.n)
        self.points_ = points
        self.decomposition_ = d
        self.n_rectangles_ = len(pos)
        self.dominance_ = Dominance2Index(_corner_points(*rects))
        return self

    @property
    def n_stored_(self) -> int:
        check_is_fitted(self, "dominance_")
        return self.dominance_.size

    def _count_ranks(self, a, b):
        return self.dominance_.query_batch(a, b)


def build_hcc_tree(pts: RankedPointSet, g: CategoryGraph, weighted: bool = False) -> HccTreeIndex:
    return HccTreeIndex(g, weighted)._fit_ranked(pts)


def query_hcc_tree(idx: HccTreeIndex, q) -> int:
    q = IntervalQuery(*q)
    return idx.query(q.lo, q.hi)


class HccPathIndex(IntervalCounterMixin, BaseEstimator):
    """HCC when the category graph is a single path: a range maximum over the
    points' root-prefix weights."""

    def __init__(self, graph: CategoryGraph, weighted: bool = False):
        self.graph = graph
        self.weighted = weighted

    def _fit_ranked(self, points: RankedPointSet):
        g = self.graph
        if not g.is_tree or any(len(c) > 1 for c in g.children):
            raise ValueError("category graph must be a path")
        weights = g.weights if self.weighted else (1,) * g.vertex_count
        prefix = np.asarray(decompose(g, weights).prefix, dtype=np.int64)
        self.points_ = points
        self.values_ = prefix[points.colors]
        self.rangemax_ = RangeMaxIndex(self.values_) if points.n else None
        return self

    def _count_ranks(self, a, b):
        if self.rangemax_ is None:
            return np.zeros(a.shape, dtype=np.int64)
        return self.rangemax_.query_values(a, b)


def hcc_on_path(pts: RankedPointSet, g: CategoryGraph, weighted: bool = False) -> HccPathIndex:
    return HccPathIndex(g, weighted)._fit_ranked(pts)
