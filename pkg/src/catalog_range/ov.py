"""Orthogonal Vectors decided through HCC and SCRC queries on a three-layer DAG.

Vertices: one per vector of ``A``, one per coordinate, one per vector of
``B``.  ``b`` is a sub-category of coordinate ``k`` when ``b[k] = 1``, and
coordinate ``k`` is a sub-category of ``a`` when ``a[k] = 1``.  So ``a`` is
a super-category of ``b`` exactly when the two share a 1, and a point colored
``b`` reaches every ``A`` vertex unless some ``a`` is orthogonal to ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CategoryGraph, RankedPointSet
from .hcc_dag import HccDagIndex, ScrcDagIndex

__all__ = [
    "OvInstance",
    "brute_ov",
    "build_ov_dag",
    "decide_ov_hcc",
    "decide_ov_scrc",
    "find_orthogonal_pair",
    "hcc_counts",
]


@dataclass(frozen=True)
class OvInstance:
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a = tuple(tuple(int(bool(x)) for x in v) for v in self.A)
        b = tuple(tuple(int(bool(x)) for x in v) for v in self.B)
        if not a or not b:
            raise ValueError("both vector sets must be nonempty")
        if len({len(v) for v in a + b}) != 1:
            raise ValueError("dimension mismatch")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def dim(self) -> int:
        return len(self.A[0])

    @property
    def eta(self) -> int:
        return len(self.A)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array(self.A, dtype=np.int64), np.array(self.B, dtype=np.int64)

    def a_vertex(self, i: int) -> int:
        return i

    def b_vertex(self, j: int) -> int:
        return self.eta + self.dim + j


def build_ov_dag(inst: OvInstance):
    """Return ``(graph, points, expected)``.

    Point ``j`` sits at position ``j + 1`` with color ``b_j``;
    ``expected[j] = |b_j|_1 + 1 + eta`` is its HCC answer when no vector of
    ``A`` is orthogonal to ``b_j``.
    """
    A, B = inst.arrays()
    eta, d = inst.eta, inst.dim
    edges = [(eta + k, i) for i, k in zip(*np.nonzero(A))]
    edges += [(inst.b_vertex(j), eta + k) for j, k in zip(*np.nonzero(B))]
    g = CategoryGraph(eta + d + len(B), tuple((int(u), int(v)) for u, v in edges), kind="dag")
    colors = np.arange(len(B)) + eta + d
    pts = RankedPointSet.from_points(np.arange(1, len(B) + 1), colors, g)
    expected = B.sum(axis=1) + 1 + eta
    return g, pts, expected


def hcc_counts(inst: OvInstance, structure=HccDagIndex) -> np.ndarray:
    """Single-point HCC answer for every ``b_j``."""
    g, pts, _ = build_ov_dag(inst)
    idx = structure(g)._fit_ranked(pts)
    r = np.arange(1, pts.n + 1)
    return idx.predict_ranks(r, r)


def decide_ov_hcc(inst: OvInstance, structure=HccDagIndex) -> tuple[bool, int | None]:
    """``(True, j)`` when ``b_j`` is the first vector with an orthogonal partner."""
    _, _, expected = build_ov_dag(inst)
    bad = np.flatnonzero(hcc_counts(inst, structure) != expected)
    return (True, int(bad[0])) if bad.size else (False, None)


def decide_ov_scrc(inst: OvInstance, structure=ScrcDagIndex) -> tuple[bool, int | None]:
    """``(True, i)`` when ``a_i`` is the first vector missed by some ``b``: its
    sub-category count over all points falls short of ``|B|``."""
    g, pts, _ = build_ov_dag(inst)
    idx = structure(g)._fit_ranked(pts)
    m = inst.eta
    counts = idx.predict_ranks(np.ones(m, np.int64), np.full(m, pts.n), np.arange(m))
    bad = np.flatnonzero(counts < len(inst.B))
    return (True, int(bad[0])) if bad.size else (False, None)


def find_orthogonal_pair(inst: OvInstance) -> tuple[int, int] | None:
    """First ``(i, j)`` in row-major order with ``a_i . b_j = 0``."""
    A, B = inst.arrays()
    hits = np.argwhere(A @ B.T == 0)
    return (int(hits[0, 0]), int(hits[0, 1])) if len(hits) else None


def brute_ov(inst: OvInstance) -> bool:
    return find_orthogonal_pair(inst) is not None
