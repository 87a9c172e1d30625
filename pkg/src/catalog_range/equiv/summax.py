"""Dominance -> sum-max -> caterpillar HCC, and the composite built from them.

``p3_to_p1`` answers weighted 2D dominance sums using nothing but HCC
queries on caterpillars plus range maxima: weights are split into small
layers, each layer goes through a sqrt-grid whose leaves turn their points
into two sum-max instances, and each sum-max instance is encoded as a
caterpillar whose legs are as long as the largest weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..core import CategoryGraph, CoordinateMap, SumMaxInstance, rank_space_reduce
from ..engines.rangemax import RangeMaxIndex
from ..hcc_tree import HccTreeIndex
from .grid import GridIndex
from .weights import WeightSplit, split_weights

__all__ = [
    "CaterpillarDominance",
    "CaterpillarInstance",
    "DominanceAsSumMax",
    "P3ToP1",
    "dominance_to_summax",
    "p3_to_p1",
    "summax_to_caterpillar",
]


@dataclass(frozen=True, eq=False)
class DominanceAsSumMax:
    """Two sum-max instances whose difference answers dominance sums.

    ``single`` gives both copies of point ``i`` color ``i``; ``paired``
    gives them colors ``2i`` and ``2i+1``.  A point whose copies both fall in
    the query interval counts twice in ``paired`` and once in ``single``.
    """

    single: SumMaxInstance
    paired: SumMaxInstance
    cmap: CoordinateMap

    def interval(self, qx, qy) -> tuple[np.ndarray, np.ndarray]:
        """Rank interval for corner ``(qx, qy)``; negative corners map to empty."""
        qx = np.asarray(qx, dtype=np.int64)
        qy = np.asarray(qy, dtype=np.int64)
        a, b = self.cmap.to_ranks_batch(-qx, qy)
        dead = (qx < 0) | (qy < 0)
        return np.where(dead, 1, a), np.where(dead, 0, b)

    @staticmethod
    def combine(paired_answer, single_answer):
        return paired_answer - single_answer


def dominance_to_summax(points) -> DominanceAsSumMax:
    """Encode nonnegative-coordinate points ``(x, y, w)`` as two sum-max instances.

    Point ``i`` becomes the 1D points ``-x`` and ``y``; the corner
    ``(qx, qy)`` becomes the interval ``[-qx, qy]``.
    """
    arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("expected rows (x, y, w)")
    if arr.size and (arr[:, :2].min() < 0 or arr[:, 2].min() < 0):
        raise ValueError("coordinates and weights must be nonnegative")
    m = len(arr)
    if m == 0:
        empty = SumMaxInstance((), 0)
        return DominanceAsSumMax(empty, empty, CoordinateMap(np.empty(0, np.int64)))
    line = np.concatenate((-arr[:, 0], arr[:, 1]))
    pos, cmap = rank_space_reduce(line)
    idx = np.arange(m)
    w = arr[:, 2].tolist()
    single = tuple(zip(pos.tolist(), np.concatenate((idx, idx)).tolist(), w + w))
    paired = tuple(zip(pos.tolist(), np.concatenate((2 * idx, 2 * idx + 1)).tolist(), w + w))
    return DominanceAsSumMax(SumMaxInstance(single, 2 * m), SumMaxInstance(paired, 2 * m), cmap)


@dataclass(frozen=True, eq=False)
class CaterpillarInstance:
    """Sum-max instance encoded as colored points on a caterpillar.

    Central vertex ``i`` (1-based color id) has id ``i - 1``; vertex 0 is the
    root and central ``i + 1`` hangs below central ``i``.  Leg ``i`` is a path
    of ``leg_length`` vertices hanging from central ``i``; its ``w``-th
    vertex (counted from the top) encodes weight ``w``.
    """

    graph: CategoryGraph
    positions: np.ndarray
    vertices: np.ndarray
    color_ids: np.ndarray
    colors: tuple  # color id - 1 -> original color
    leg_length: int

    def leg_vertex(self, color_id: int, w: int) -> int:
        return len(self.colors) + (color_id - 1) * self.leg_length + (w - 1)

    @cached_property
    def _rangemax(self) -> tuple[CoordinateMap, RangeMaxIndex | None]:
        order = np.argsort(self.positions, kind="stable")
        cmap = CoordinateMap(self.positions[order])
        rm = RangeMaxIndex(self.color_ids[order]) if len(order) else None
        return cmap, rm

    def central_count(self, lo, hi) -> np.ndarray:
        """Central vertices covered by the points in ``[lo, hi]``: the largest
        color id present."""
        cmap, rm = self._rangemax
        lo = np.asarray(lo, dtype=np.int64)
        if rm is None:
            return np.zeros(lo.shape, dtype=np.int64)
        a, b = cmap.to_ranks_batch(lo, np.asarray(hi, dtype=np.int64))
        return rm.query_values(a, b)

    def to_summax(self, hcc_answer, lo, hi):
        """Sum-max answer on ``[lo, hi]`` from the caterpillar HCC answer there."""
        return np.asarray(hcc_answer, dtype=np.int64) - self.central_count(lo, hi)


def summax_to_caterpillar(inst: SumMaxInstance):
    """Encode a sum-max instance with positive weights as caterpillar HCC.

    Returns ``(CaterpillarInstance, mapper)`` with ``mapper(hcc, lo, hi)``
    giving the sum-max answer.
    """
    pos = np.array([p[0] for p in inst.points], dtype=np.int64)
    w = np.array([p[2] for p in inst.points], dtype=np.int64)
    if w.size and w.min() <= 0:
        raise ValueError("caterpillar encoding needs positive weights")
    colors = tuple(sorted({p[1] for p in inst.points}))
    id_of = {c: i for i, c in enumerate(colors, start=1)}
    L = len(colors)
    W = int(w.max()) if w.size else 0
    edges = [(i, i - 1) for i in range(1, L)]
    for i in range(L):
        first = L + i * W
        if W:
            edges.append((first, i))
        edges.extend((first + k, first + k - 1) for k in range(1, W))
    graph = CategoryGraph(L * (W + 1), tuple(edges), kind="caterpillar") if L else \
        CategoryGraph(1, (), kind="path")
    ids = np.array([id_of[p[1]] for p in inst.points], dtype=np.int64)
    verts = L + (ids - 1) * W + (w - 1)
    cat = CaterpillarInstance(graph, pos, verts, ids, colors, W)
    return cat, cat.to_summax


class _CaterpillarSumMax:
    """Sum-max through one caterpillar HCC-tree index."""

    def __init__(self, inst: SumMaxInstance):
        pts = [p for p in inst.points if p[2] > 0]
        self.cat, self.to_summax = summax_to_caterpillar(SumMaxInstance(tuple(pts), inst.n))
        self.hcc = HccTreeIndex(self.cat.graph).fit(self.cat.positions, self.cat.vertices) \
            if pts else None

    def query_batch(self, lo, hi) -> np.ndarray:
        lo = np.asarray(lo, dtype=np.int64)
        if self.hcc is None:
            return np.zeros(lo.shape, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        return self.to_summax(self.hcc.predict(np.column_stack((lo, hi))), lo, hi)


class CaterpillarDominance:
    """2D dominance sums answered by two caterpillar HCC instances.

    Rows ``(x, y, w)`` need nonnegative coordinates and weights; zero-weight
    points contribute nothing and are dropped before encoding.
    """

    def __init__(self, points):
        arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
        self.encoding = dominance_to_summax(arr[arr[:, 2] > 0])
        self.single = _CaterpillarSumMax(self.encoding.single)
        self.paired = _CaterpillarSumMax(self.encoding.paired)

    def query_batch(self, qx, qy) -> np.ndarray:
        a, b = self.encoding.interval(qx, qy)
        out = np.zeros(a.shape, dtype=np.int64)
        ok = a <= b
        if ok.any():
            out[ok] = self.encoding.combine(self.paired.query_batch(a[ok], b[ok]),
                                            self.single.query_batch(a[ok], b[ok]))
        return out

    def query(self, qx: int, qy: int) -> int:
        return int(self.query_batch(np.array([qx]), np.array([qy]))[0])


class P3ToP1:
    """Weighted 2D dominance through weight layers, sqrt grids and caterpillar HCC."""

    def __init__(self, points, eps: float = 0.5, s: int = 1, *, weight_bits: int | None = None):
        arr = np.asarray(points if len(points) else np.empty((0, 3)), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 3:
            raise ValueError("expected rows (x, y, w)")
        # rank space up front: the sum-max encoding needs nonnegative coordinates
        xr, xmap = rank_space_reduce(arr[:, 0]) if len(arr) else (arr[:, 0], None)
        yr, ymap = rank_space_reduce(arr[:, 1]) if len(arr) else (arr[:, 1], None)
        self._maps = (xmap, ymap)
        ranked = np.column_stack((xr, yr, arr[:, 2]))
        self.split: WeightSplit = split_weights(ranked, eps, weight_bits=weight_bits)
        self.grids = [GridIndex(layer, s, CaterpillarDominance) for layer in self.split.layers]

    def query_batch(self, qx, qy) -> np.ndarray:
        qx = np.asarray(qx, dtype=np.int64)
        xmap, ymap = self._maps
        if xmap is None:
            return np.zeros(qx.shape, dtype=np.int64)
        kx = np.searchsorted(xmap.coords, qx, side="right")
        ky = np.searchsorted(ymap.coords, np.asarray(qy, dtype=np.int64), side="right")
        return self.split.combine([g.query_batch(kx, ky) for g in self.grids])

    def query(self, qx: int, qy: int) -> int:
        return int(self.query_batch(np.array([qx]), np.array([qy]))[0])


def p3_to_p1(points, eps: float = 0.5, s: int = 1, *, weight_bits: int | None = None) -> P3ToP1:
    return P3ToP1(points, eps, s, weight_bits=weight_bits)
