"""Input validation helpers used by the estimators."""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

__all__ = [
    "NotFittedError",
    "check_coords",
    "check_colors",
    "check_is_fitted",
    "check_queries",
    "check_tree",
]


def _as_int_array(a, name: str) -> np.ndarray:
    arr = np.asarray(a)
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
            raise ValueError(f"{name} must hold integer values")
    elif arr.dtype.kind not in "iub":
        raise TypeError(f"{name} must be integer-valued, got dtype {arr.dtype}")
    return arr.astype(np.int64)


def check_coords(X) -> np.ndarray:
    """Return 1D integer coordinates; ``X`` may be shaped ``(n,)`` or ``(n, 1)``."""
    arr = _as_int_array(X, "X")
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected 1D coordinates, got shape {arr.shape}")
    return arr


def check_colors(colors, n: int, vertex_count: int | None = None) -> np.ndarray:
    arr = _as_int_array(colors, "colors").ravel()
    if arr.size != n:
        raise ValueError(f"got {arr.size} colors for {n} points")
    if vertex_count is not None and arr.size and (arr.min() < 0 or arr.max() >= vertex_count):
        raise ValueError("point color is not a vertex of the category graph")
    return arr


def check_queries(Q, width: int = 2) -> np.ndarray:
    """Coerce queries to an ``(m, width)`` integer array (``lo, hi[, v_q]``)."""
    arr = _as_int_array(Q, "queries")
    if arr.ndim == 1 and arr.size == width:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != width:
        raise ValueError(f"queries must have shape (m, {width}), got {arr.shape}")
    return arr


def check_tree(graph) -> None:
    if not graph.is_tree:
        raise ValueError("category graph must be a rooted tree")
