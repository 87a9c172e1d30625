"""Domain types shared by every index: category graphs, rank-space point sets,
interval queries, and reachability over category graphs.

A category graph edge ``(u, v)`` means *u is a sub-category of v*.  Going up
an edge therefore moves toward super-categories; the root of a category tree
is the unique vertex with no outgoing edge.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from numba import njit

KINDS = ("path", "tree", "caterpillar", "dag")

# |w| < 2**40 keeps sums of 2**20 signed weights inside a 63-bit accumulator.
WEIGHT_LIMIT = 1 << 40


class GraphError(ValueError):
    """Raised when a category graph violates its declared kind."""


@dataclass(frozen=True, eq=False)
class CategoryGraph:
    """Category tree or DAG over vertices ``0 .. vertex_count - 1``.

    Parameters
    ----------
    vertex_count : int
    edges : sequence of (u, v)
        ``u`` is a sub-category of ``v``.
    kind : {"path", "tree", "caterpillar", "dag"}
        Declared shape; checked at construction.
    weights : mapping or sequence, optional
        Nonnegative integer vertex weights, default 1 everywhere.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    kind: str = "dag"
    weights: tuple[int, ...] = field(default=())

    def __post_init__(self):
        n = int(self.vertex_count)
        if n < 1:
            raise GraphError("vertex_count must be positive")
        if self.kind not in KINDS:
            raise GraphError(f"unknown graph kind {self.kind!r}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) references an invalid vertex")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "weights", _normalize_weights(self.weights, n))
        self.topological_order  # raises on cycles
        if self.kind != "dag":
            self._check_tree_kind()

    def __repr__(self):
        return (f"CategoryGraph(vertex_count={self.vertex_count}, "
                f"edges=<{len(self.edges)}>, kind={self.kind!r})")

    @cached_property
    def parents(self) -> tuple[tuple[int, ...], ...]:
        """Direct super-categories of each vertex (out-neighbours)."""
        out = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(set(p))) for p in out)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """Direct sub-categories of each vertex (in-neighbours)."""
        inc = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            inc[v].append(u)
        return tuple(tuple(sorted(set(c))) for c in inc)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Vertices ordered so that every sub-category precedes its parents."""
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        order, placed = _kahn_order(self.vertex_count, edges[:, 0].copy(), edges[:, 1].copy())
        if placed < self.vertex_count:
            stuck = sorted(set(range(self.vertex_count)) - set(order[:placed].tolist()))
            raise GraphError(f"category graph has a cycle through vertices {stuck[:8]}")
        return tuple(order.tolist())

    @property
    def is_tree(self) -> bool:
        return (all(len(p) <= 1 for p in self.parents)
                and sum(1 for p in self.parents if not p) == 1)

    @cached_property
    def root(self) -> int:
        if not self.is_tree:
            raise GraphError("graph is not a tree")
        return next(v for v, p in enumerate(self.parents) if not p)

    @cached_property
    def parent(self) -> tuple[int, ...]:
        """Tree parent of every vertex, ``-1`` for the root."""
        if not self.is_tree:
            raise GraphError("graph is not a tree")
        return tuple(p[0] if p else -1 for p in self.parents)

    def _check_tree_kind(self):
        if not self.is_tree:
            raise GraphError(f"kind={self.kind!r} requires a rooted tree")
        if self.kind == "path" and any(len(c) > 1 for c in self.children):
            raise GraphError("kind='path' requires every in-degree <= 1")
        if self.kind == "caterpillar" and not _branch_vertices_on_one_path(self):
            raise GraphError("caterpillar: degree >= 3 vertices are not on one path")


@njit(cache=True)
def _kahn_order(n, src, dst):
    # edges src -> dst; sources first, FIFO in id order
    indeg = np.zeros(n, dtype=np.int64)
    start = np.zeros(n + 1, dtype=np.int64)
    for k in range(src.shape[0]):
        indeg[dst[k]] += 1
        start[src[k] + 1] += 1
    for v in range(n):
        start[v + 1] += start[v]
    out = np.empty(src.shape[0], dtype=np.int64)
    fill = start[:-1].copy()
    for k in range(src.shape[0]):
        out[fill[src[k]]] = dst[k]
        fill[src[k]] += 1
    order = np.empty(n, dtype=np.int64)
    head = 0
    tail = 0
    for v in range(n):
        if indeg[v] == 0:
            order[tail] = v
            tail += 1
    while head < tail:
        u = order[head]
        head += 1
        for k in range(start[u], start[u + 1]):
            w = out[k]
            indeg[w] -= 1
            if indeg[w] == 0:
                order[tail] = w
                tail += 1
    return order, tail


def _normalize_weights(weights, n: int) -> tuple[int, ...]:
    if weights is None or (not isinstance(weights, Mapping) and len(weights) == 0):
        return (1,) * n
    if isinstance(weights, Mapping):
        out = [1] * n
        for v, w in weights.items():
            if not 0 <= int(v) < n:
                raise GraphError(f"weight for invalid vertex {v}")
            out[int(v)] = int(w)
    else:
        out = [int(w) for w in weights]
        if len(out) != n:
            raise GraphError("weights length does not match vertex_count")
    if any(w < 0 for w in out):
        raise GraphError("vertex weights must be nonnegative")
    return tuple(out)


def _branch_vertices_on_one_path(g: CategoryGraph) -> bool:
    n = g.vertex_count
    parent = np.asarray(g.parent, dtype=np.int64)
    degree = np.bincount(parent[parent >= 0], minlength=n) + (parent >= 0)
    branch = degree >= 3
    if branch.sum() <= 2:
        return True
    order = np.asarray(g.topological_order, dtype=np.int64)
    return _steiner_is_path(parent, order, branch)


@njit(cache=True)
def _steiner_is_path(parent, order, branch):
    # the tree spanning all branch vertices uses edge (v, parent v) exactly
    # when v's subtree holds some but not all of them; it is a path iff no
    # vertex touches three such edges
    n = parent.shape[0]
    total = 0
    below = np.zeros(n, dtype=np.int64)
    for v in range(n):
        if branch[v]:
            below[v] = 1
            total += 1
    for v in order:
        if parent[v] >= 0:
            below[parent[v]] += below[v]
    touching = np.zeros(n, dtype=np.int64)
    for v in range(n):
        p = parent[v]
        if p >= 0 and 0 < below[v] < total:
            touching[v] += 1
            touching[p] += 1
    for v in range(n):
        if touching[v] > 2:
            return False
    return True


def path_graph(length: int, weights=None) -> CategoryGraph:
    """Path ``0 -> 1 -> ... -> length-1``; vertex 0 is the deepest, the last is the root."""
    return CategoryGraph(length, tuple((i, i + 1) for i in range(length - 1)),
                         kind="path", weights=weights)


def tree_from_parents(parent: Sequence[int], kind: str = "tree", weights=None) -> CategoryGraph:
    """Build a category tree from a parent array (``-1`` marks the root)."""
    edges = tuple((v, p) for v, p in enumerate(parent) if p >= 0)
    return CategoryGraph(len(parent), edges, kind=kind, weights=weights)


# --------------------------------------------------------------------------
# Reachability
# --------------------------------------------------------------------------

def _check_vertex(g: CategoryGraph, v: int) -> int:
    v = int(v)
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"invalid vertex id {v}")
    return v


def _walk(adj, start: int) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for x in adj[u]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return sorted(seen)


def reachable_up(g: CategoryGraph, v: int) -> list[int]:
    """Super-categories of ``v``, including ``v`` itself, ascending."""
    return _walk(g.parents, _check_vertex(g, v))


def reachable_down(g: CategoryGraph, v: int) -> list[int]:
    """Sub-categories of ``v``, including ``v`` itself, ascending."""
    return _walk(g.children, _check_vertex(g, v))


def ancestor_rows(g: CategoryGraph) -> list[int]:
    """Packed reachability rows: bit ``u`` of ``rows[v]`` is set iff ``v`` reaches ``u``.

    Rows are filled super-categories first, one big-int OR per edge.
    """
    rows = [0] * g.vertex_count
    for v in reversed(g.topological_order):
        r = 1 << v
        for p in g.parents[v]:
            r |= rows[p]
        rows[v] = r
    return rows


def bits_of(row: int, width: int) -> np.ndarray:
    """Indices of the set bits of a packed row, ascending."""
    if row == 0:
        return np.empty(0, dtype=np.int64)
    raw = np.frombuffer(row.to_bytes((width + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).astype(np.int64)


# --------------------------------------------------------------------------
# Rank space
# --------------------------------------------------------------------------

def predecessor(sorted_values: Sequence[int], q: int) -> int | None:
    """Largest index whose value is ``<= q``, or ``None``."""
    i = bisect.bisect_right(sorted_values, q) - 1
    return i if i >= 0 else None


def successor(sorted_values: Sequence[int], q: int) -> int | None:
    """Smallest index whose value is ``>= q``, or ``None``."""
    i = bisect.bisect_left(sorted_values, q)
    return i if i < len(sorted_values) else None


class CoordinateMap:
    """Translate original coordinates to 1-based ranks.

    ``coords`` holds the original coordinate of rank ``r`` at index ``r - 1``.
    """

    def __init__(self, coords):
        self.coords = np.asarray(coords, dtype=np.int64)
        if np.any(np.diff(self.coords) < 0):
            raise ValueError("coordinates must be sorted")

    def __len__(self):
        return len(self.coords)

    def successor(self, lo: int) -> int:
        """Rank of the first point with coordinate ``>= lo`` (``n + 1`` if none)."""
        return int(np.searchsorted(self.coords, lo, side="left")) + 1

    def predecessor(self, hi: int) -> int:
        """Rank of the last point with coordinate ``<= hi`` (``0`` if none)."""
        return int(np.searchsorted(self.coords, hi, side="right"))

    def to_ranks(self, lo: int, hi: int) -> tuple[int, int]:
        """Rank interval ``[a, b]`` covering ``[lo, hi]``; empty when ``a > b``."""
        return self.successor(lo), self.predecessor(hi)

    def to_ranks_batch(self, lo, hi) -> tuple[np.ndarray, np.ndarray]:
        a = np.searchsorted(self.coords, lo, side="left") + 1
        b = np.searchsorted(self.coords, hi, side="right")
        return a.astype(np.int64), b.astype(np.int64)

    def inverse(self, ranks) -> np.ndarray:
        return self.coords[np.asarray(ranks, dtype=np.int64) - 1]


def rank_space_reduce(coords) -> tuple[np.ndarray, CoordinateMap]:
    """Map coordinates to distinct ranks ``1..n``; ties keep input order.

    >>> rank_space_reduce([10, 3, 3, 7])[0].tolist()
    [4, 1, 2, 3]
    """
    arr = np.asarray(coords, dtype=np.int64).ravel()
    if arr.size == 0:
        raise ValueError("empty point set")
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=np.int64)
    ranks[order] = np.arange(1, arr.size + 1)
    return ranks, CoordinateMap(arr[order])


@dataclass(frozen=True, eq=False)
class RankedPointSet:
    """Colored 1D points in rank space.

    ``colors[r - 1]`` is the color of the point with rank ``r``; ``cmap``
    translates original-coordinate intervals to rank intervals.
    """

    colors: np.ndarray
    cmap: CoordinateMap
    ranks: np.ndarray  # input index -> rank

    @classmethod
    def from_points(cls, coords, colors, graph: CategoryGraph | None = None) -> "RankedPointSet":
        coords = np.asarray(coords, dtype=np.int64).ravel()
        colors = np.asarray(colors, dtype=np.int64).ravel()
        if coords.shape != colors.shape:
            raise ValueError("coords and colors differ in length")
        if coords.size == 0:
            return cls(np.empty(0, np.int64), CoordinateMap(np.empty(0, np.int64)),
                       np.empty(0, np.int64))
        if graph is not None and (colors.min() < 0 or colors.max() >= graph.vertex_count):
            raise ValueError("point color is not a vertex of the category graph")
        ranks, cmap = rank_space_reduce(coords)
        ordered = np.empty_like(colors)
        ordered[ranks - 1] = colors
        return cls(ordered, cmap, ranks)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def positions(self) -> np.ndarray:
        return np.arange(1, self.n + 1, dtype=np.int64)

    @property
    def coords(self) -> np.ndarray:
        return self.cmap.coords


class IntervalQuery(NamedTuple):
    lo: int
    hi: int

    @classmethod
    def checked(cls, lo: int, hi: int) -> "IntervalQuery":
        if lo > hi:
            raise ValueError(f"interval [{lo}, {hi}] has lo > hi")
        return cls(int(lo), int(hi))


class WeightedPoint2D(NamedTuple):
    x: int
    y: int
    w: int


class Point3D(NamedTuple):
    x: int
    y: int
    z: int
    w: int = 1


def check_weights(weights: Iterable[int]) -> np.ndarray:
    """Validate signed weights against the accumulator bound."""
    w = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights,
                   dtype=np.int64)
    if w.size and int(np.abs(w).max()) >= WEIGHT_LIMIT:
        raise OverflowError("point weight magnitude must stay below 2**40")
    if float(np.abs(w).astype(np.float64).sum()) >= 2.0 ** 62:
        raise OverflowError("weight sum may overflow a 63-bit accumulator")
    return w


@dataclass(frozen=True)
class SumMaxInstance:
    """Colored, weighted 1D points ``(position, color, weight)``.

    ``n`` bounds the position universe (positions lie in ``1..n``); it fixes
    the unbounded sides of stabbing rectangles.
    """

    points: tuple[tuple[int, int, int], ...]
    n: int

    def __len__(self):
        return len(self.points)
