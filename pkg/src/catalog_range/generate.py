"""Deterministic random instances: the same arguments always give the same output."""

from __future__ import annotations

import numpy as np

from .core import CategoryGraph, tree_from_parents
from .ov import OvInstance

__all__ = [
    "random_caterpillar",
    "random_dag",
    "random_ov",
    "random_path",
    "random_points",
    "random_queries",
    "random_tree",
    "random_weights",
]


def random_weights(n: int, rng: np.random.Generator, high: int = 16) -> list[int]:
    return rng.integers(1, high + 1, size=n).tolist()


def random_tree(n: int, seed: int = 0, *, weighted: bool = False) -> CategoryGraph:
    """Random recursive tree: vertex ``i`` picks its parent among ``0..i-1``,
    then labels are shuffled so the root is not always 0."""
    rng = np.random.default_rng(seed)
    parent = [-1] + [int(rng.integers(0, i)) for i in range(1, n)]
    perm = rng.permutation(n)
    relabeled = [0] * n
    for i, p in enumerate(parent):
        relabeled[perm[i]] = -1 if p < 0 else int(perm[p])
    weights = random_weights(n, rng) if weighted else None
    return tree_from_parents(relabeled, "tree", weights)


def random_path(n: int, seed: int = 0, *, weighted: bool = False) -> CategoryGraph:
    rng = np.random.default_rng(seed)
    order = rng.permutation(n).tolist()
    edges = tuple(zip(order[:-1], order[1:]))
    weights = random_weights(n, rng) if weighted else None
    return CategoryGraph(n, edges, kind="path", weights=weights)


def random_caterpillar(legs: int, leg_length: int, seed: int = 0, *,
                       weighted: bool = False) -> CategoryGraph:
    """Central path ``0..legs-1`` (0 is the root) with a leg of ``leg_length``
    vertices under every central vertex."""
    rng = np.random.default_rng(seed)
    parent = [-1] + list(range(legs - 1))
    for i in range(legs):
        prev = i
        for _ in range(leg_length):
            parent.append(prev)
            prev = len(parent) - 1
    n = len(parent)
    weights = random_weights(n, rng) if weighted else None
    return tree_from_parents(parent, "caterpillar", weights)


def random_dag(n: int, seed: int = 0, *, edges_per_vertex: float = 2.0,
               weighted: bool = False) -> CategoryGraph:
    """Sparse DAG with at most ``min(3, edges_per_vertex) * n`` edges.

    Vertices are shuffled into a hidden order; every edge points from a
    later vertex to an earlier one in that order.
    """
    rng = np.random.default_rng(seed)
    budget = int(min(3.0, edges_per_vertex) * n)
    order = rng.permutation(n)
    edges = set()
    if n > 1:
        for _ in range(budget):
            i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
            edges.add((int(order[j]), int(order[i])))
    weights = random_weights(n, rng) if weighted else None
    return CategoryGraph(n, tuple(sorted(edges)), kind="dag", weights=weights)


def random_points(g: CategoryGraph, count: int, seed: int = 0, *,
                  span: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``count`` points with coordinates in ``[0, span)`` (default ``2*count``)
    and uniformly random vertex colors."""
    rng = np.random.default_rng(seed + 1_000_003)
    span = span or max(2 * count, 1)
    return (rng.integers(0, span, size=count, dtype=np.int64),
            rng.integers(0, g.vertex_count, size=count, dtype=np.int64))


def random_queries(count: int, span: int, seed: int = 0, *,
                   vertex_count: int | None = None) -> np.ndarray:
    """Interval queries ``lo <= hi`` over ``[-1, span]``; with ``vertex_count``
    each row also gets a query vertex."""
    rng = np.random.default_rng(seed + 2_000_003)
    ends = np.sort(rng.integers(-1, span + 1, size=(count, 2)), axis=1)
    if vertex_count is None:
        return ends
    return np.column_stack((ends, rng.integers(0, vertex_count, size=count)))


def random_ov(eta: int, d: int, seed: int = 0, *, density: float = 0.5,
              plant: bool = False) -> OvInstance:
    """Random OV instance; ``plant`` forces one orthogonal pair."""
    rng = np.random.default_rng(seed)
    A = (rng.random((eta, d)) < density).astype(int)
    B = (rng.random((eta, d)) < density).astype(int)
    if plant:
        i, j = int(rng.integers(eta)), int(rng.integers(eta))
        B[j] &= 1 - A[i]
    return OvInstance(tuple(map(tuple, A.tolist())), tuple(map(tuple, B.tolist())))
