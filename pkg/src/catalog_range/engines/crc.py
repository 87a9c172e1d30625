"""1D colored range counting via previous-occurrence links.

Each point at position ``x`` with color ``c`` is linked to ``prev``, the
position of the previous point of color ``c`` (0 if none).  A color occurs in
``[lo, hi]`` exactly once as a point with ``lo <= x <= hi`` and ``prev < lo``,
which is a difference of two dominance queries on the ``(x, prev)`` plane.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from ..base import BaseEstimator, IntervalCounterMixin
from ..core import RankedPointSet
from .dominance import Dominance2Index

__all__ = ["Crc1dIndex", "build_crc1d", "query_crc1d", "prev_links"]


def prev_links(positions: np.ndarray, colors: np.ndarray):
    """Deduplicate ``(position, color)`` pairs and attach previous-same-color links.

    Returns ``(positions, colors, prev)`` sorted by color then position.
    """
    pairs = np.unique(np.column_stack((colors, positions)), axis=0)
    col, pos = pairs[:, 0], pairs[:, 1]
    prev = np.zeros(len(pos), dtype=np.int64)
    if len(pos) > 1:
        same = col[1:] == col[:-1]
        prev[1:][same] = pos[:-1][same]
    return pos, col, prev


def _color_weights(weights, colors: np.ndarray) -> np.ndarray:
    if weights is None:
        return np.ones(len(colors), dtype=np.int64)
    if isinstance(weights, Mapping):
        return np.array([weights[int(c)] for c in colors], dtype=np.int64)
    return np.asarray(weights, dtype=np.int64)[colors]


class Crc1dIndex(IntervalCounterMixin, BaseEstimator):
    """Count (or weight-sum) distinct colors in a 1D interval.

    Parameters
    ----------
    weights : mapping or sequence, optional
        Per-color weight; omitted means every color counts 1.
    """

    _graph_attr = None

    def __init__(self, weights=None):
        self.weights = weights

    def _fit_ranked(self, points: RankedPointSet):
        self.points_ = points
        self._build(points.positions, points.colors)
        return self

    @classmethod
    def from_positions(cls, positions, colors, weights=None) -> "Crc1dIndex":
        """Index points given directly by integer positions ``>= 1``.

        Several colors may share a position; queries are then in position
        space (see :meth:`count_positions`).
        """
        idx = cls(weights)
        idx._build(np.asarray(positions, dtype=np.int64), np.asarray(colors, dtype=np.int64))
        return idx

    def _build(self, positions, colors):
        if positions.size and positions.min() < 1:
            raise ValueError("positions must be >= 1")
        pos, col, prev = prev_links(positions, colors)
        w = _color_weights(self.weights, col)
        self.n_stored_ = len(pos)
        self.prev_ = (pos, col, prev)
        self.dominance_ = Dominance2Index(np.column_stack((pos, prev, w)))

    def count_positions(self, lo, hi) -> np.ndarray:
        lo = np.asarray(lo, dtype=np.int64)
        hi = np.asarray(hi, dtype=np.int64)
        below = lo - 1
        return self.dominance_.query_batch(hi, below) - self.dominance_.query_batch(below, below)

    def count(self, lo: int, hi: int) -> int:
        if lo > hi:
            return 0
        d = self.dominance_
        return d.query(hi, lo - 1) - d.query(lo - 1, lo - 1)

    def _count_ranks(self, a, b):
        return self.count_positions(a, b)


def build_crc1d(pts: RankedPointSet, weights=None) -> Crc1dIndex:
    return Crc1dIndex(weights)._fit_ranked(pts)


def query_crc1d(idx: Crc1dIndex, lo: int, hi: int) -> int:
    """Answer on rank interval ``[lo, hi]``; ``lo > hi`` gives 0."""
    return idx.count(lo, hi)
