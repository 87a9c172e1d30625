"""Sub-category range counting on category trees.

Every heavy path ``pi`` gets its own 3-sided color counting structure.  A
point whose color ``c`` has a root path crossing ``pi`` is stored there at
``(rank, h(v))``, where ``v`` is the deepest crossing vertex and ``h`` counts
the vertices of ``pi`` strictly below ``v``; the point keeps ``c`` as its
color.  For a query vertex ``v_q`` on ``pi``, ``c`` is a sub-category of
``v_q`` exactly when its crossing vertex is at or below ``v_q``, i.e.
``h(v) <= h(v_q)``.
"""

from __future__ import annotations

from collections import defaultdict

import numpy as np

from ._validation import check_tree
from .base import BaseEstimator, SubCategoryCounterMixin
from .core import CategoryGraph, IntervalQuery, RankedPointSet
from .engines.color3sided import Color3sidedIndex
from .heavypath import decompose

__all__ = ["ScrcTreeIndex", "build_scrc_tree", "query_scrc_tree"]


class ScrcTreeIndex(SubCategoryCounterMixin, BaseEstimator):
    """SCRC on a category tree.

    Attributes
    ----------
    decomposition_ : HeavyPathDecomposition
    path_points_ : dict
        Heavy path id -> ``(N, 3)`` array of stored ``(rank, h, color)`` rows.
    structures_ : dict
        Heavy path id -> :class:`Color3sidedIndex`.
    """

    def __init__(self, graph: CategoryGraph):
        self.graph = graph

    def _fit_ranked(self, points: RankedPointSet):
        check_tree(self.graph)
        d = decompose(self.graph)
        rows = defaultdict(list)
        for r, c in enumerate(points.colors.tolist(), start=1):
            for hit in d.chain(c):
                rows[hit.path].append((r, d.height(hit.vertex), c))
        self.points_ = points
        self.decomposition_ = d
        self.path_points_ = {p: np.array(v, dtype=np.int64) for p, v in rows.items()}
        self.structures_ = {p: Color3sidedIndex(v) for p, v in self.path_points_.items()}
        return self

    @property
    def n_stored_(self) -> int:
        return sum(len(v) for v in self.path_points_.values())

    def _count_ranks(self, a, b, v):
        d = self.decomposition_
        path = np.asarray(d.path_of, dtype=np.int64)[v]
        h = np.array([d.height(int(x)) for x in v], dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for p in np.unique(path):
            s = self.structures_.get(int(p))
            if s is None:
                continue
            m = path == p
            out[m] = s.query_batch(a[m], b[m], h[m])
        return out


def build_scrc_tree(pts: RankedPointSet, g: CategoryGraph) -> ScrcTreeIndex:
    return ScrcTreeIndex(g)._fit_ranked(pts)


def query_scrc_tree(idx: ScrcTreeIndex, q, v_q: int) -> int:
    q = IntervalQuery(*q)
    return idx.query(q.lo, q.hi, v_q)
