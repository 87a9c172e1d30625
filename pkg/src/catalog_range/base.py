"""Estimator mixins: ``fit`` on colored 1D points, ``query``/``predict`` on intervals."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_colors, check_coords, check_is_fitted, check_queries
from .core import RankedPointSet

__all__ = ["BaseEstimator", "IntervalCounterMixin", "SubCategoryCounterMixin"]


class _PointFitMixin:
    _graph_attr: str | None = "graph"

    def fit(self, X, colors):
        """Index colored points ``X`` (1D integer coordinates)."""
        X = check_coords(X)
        graph = getattr(self, self._graph_attr) if self._graph_attr else None
        colors = check_colors(colors, X.size, graph.vertex_count if graph is not None else None)
        return self._fit_ranked(RankedPointSet.from_points(X, colors))

    def _fit_ranked(self, points: RankedPointSet):
        raise NotImplementedError


class IntervalCounterMixin(_PointFitMixin):
    """Answer ``[lo, hi]`` interval queries in original coordinates.

    Subclasses implement ``_count_ranks(a, b)`` over arrays of nonempty rank
    intervals.
    """

    def query(self, lo: int, hi: int) -> int:
        check_is_fitted(self, "points_")
        if lo > hi:
            return 0
        a, b = self.points_.cmap.to_ranks(lo, hi)
        if a > b:
            return 0
        return int(self._count_ranks(np.array([a]), np.array([b]))[0])

    def predict(self, Q) -> np.ndarray:
        """Answers for an ``(m, 2)`` array of ``[lo, hi]`` rows."""
        check_is_fitted(self, "points_")
        Q = check_queries(Q, 2)
        return self.predict_ranks(*self.points_.cmap.to_ranks_batch(Q[:, 0], Q[:, 1]))

    def predict_ranks(self, a, b) -> np.ndarray:
        """Answers for rank intervals ``[a, b]``; empty intervals give 0."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        ok = a <= b
        if ok.any():
            out[ok] = self._count_ranks(a[ok], b[ok])
        return out

    def _count_ranks(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class SubCategoryCounterMixin(_PointFitMixin):
    """Answer ``([lo, hi], v_q)`` queries."""

    def query(self, lo: int, hi: int, v_q: int) -> int:
        check_is_fitted(self, "points_")
        return int(self.predict(np.array([[lo, hi, v_q]]))[0])

    def predict(self, Q) -> np.ndarray:
        """Answers for an ``(m, 3)`` array of ``[lo, hi, v_q]`` rows."""
        check_is_fitted(self, "points_")
        Q = check_queries(Q, 3)
        a, b = self.points_.cmap.to_ranks_batch(Q[:, 0], Q[:, 1])
        return self.predict_ranks(a, b, Q[:, 2])

    def predict_ranks(self, a, b, v) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        nv = self.graph.vertex_count
        if v.size and (v.min() < 0 or v.max() >= nv):
            raise IndexError("invalid query vertex")
        out = np.zeros(a.shape, dtype=np.int64)
        ok = a <= b
        if ok.any():
            out[ok] = self._count_ranks(a[ok], b[ok], v[ok])
        return out

    def _count_ranks(self, a, b, v) -> np.ndarray:
        raise NotImplementedError
