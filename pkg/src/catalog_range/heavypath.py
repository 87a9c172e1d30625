"""Recursive heavy-path decomposition of a category tree.

Level 1 is the path that starts at the root and always descends into the
child with the largest subtree (smallest vertex id on ties).  Removing it
leaves subtrees hanging off its vertices; each of those is decomposed the
same way one level deeper.  Paths on one level are pairwise independent (no
vertex of one is an ancestor of a vertex of another), and a light child's
subtree is less than half of its parent's, so a root path meets at most
``floor(log2 n) + 1`` paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from ._validation import check_tree
from .core import CategoryGraph

__all__ = ["HeavyPathDecomposition", "Intersection", "decompose", "lowest_intersection"]


class Intersection(NamedTuple):
    path: int
    vertex: int
    prefix: int


@dataclass(frozen=True, eq=False)
class HeavyPathDecomposition:
    paths: tuple[tuple[int, ...], ...]  # head first, top-down
    path_level: tuple[int, ...]  # 1-based
    level: tuple[int, ...]
    path_of: tuple[int, ...]
    offset: tuple[int, ...]
    prefix: tuple[int, ...]
    hop: tuple[int, ...]  # parent of the path head, -1 on level 1

    @property
    def depth(self) -> int:
        return max(self.path_level)

    @property
    def levels(self) -> list[list[int]]:
        """Path ids grouped by level (index 0 is level 1)."""
        out = [[] for _ in range(self.depth)]
        for pid, lvl in enumerate(self.path_level):
            out[lvl - 1].append(pid)
        return out

    def height(self, v: int) -> int:
        """Vertices of ``v``'s path strictly below ``v``."""
        return len(self.paths[self.path_of[v]]) - 1 - self.offset[v]

    def chain(self, c: int) -> list[Intersection]:
        """``lowest_intersection(c, i)`` for ``i = level(c), ..., 1``."""
        out = []
        v = c
        while v >= 0:
            out.append(Intersection(self.path_of[v], v, self.prefix[v]))
            v = self.hop[v]
        return out


def _subtree_sizes(g: CategoryGraph) -> list[int]:
    size = [1] * g.vertex_count
    for v in g.topological_order:  # children before parents
        p = g.parent[v]
        if p >= 0:
            size[p] += size[v]
    return size


def decompose(g: CategoryGraph, weights: Sequence[int] | None = None) -> HeavyPathDecomposition:
    """Heavy-path decomposition; ``weights`` default to the graph's vertex weights."""
    check_tree(g)
    w = g.weights if weights is None else tuple(weights)
    n = g.vertex_count
    size = _subtree_sizes(g)
    children = g.children
    parent = g.parent

    paths, path_level = [], []
    level = [0] * n
    path_of = [0] * n
    offset = [0] * n
    prefix = [0] * n
    hop = [-1] * n

    heads = deque([(g.root, 1)])
    while heads:
        head, lvl = heads.popleft()
        pid = len(paths)
        path = []
        acc = 0
        v = head
        while True:
            acc += w[v]
            level[v], path_of[v], offset[v], prefix[v] = lvl, pid, len(path), acc
            hop[v] = parent[head]
            path.append(v)
            kids = children[v]
            if not kids:
                break
            heavy = min(kids, key=lambda c: (-size[c], c))
            for c in kids:
                if c != heavy:
                    heads.append((c, lvl + 1))
            v = heavy
        paths.append(tuple(path))
        path_level.append(lvl)

    return HeavyPathDecomposition(tuple(paths), tuple(path_level), tuple(level),
                                  tuple(path_of), tuple(offset), tuple(prefix), tuple(hop))


def lowest_intersection(d: HeavyPathDecomposition, c: int, i: int) -> Intersection | None:
    """Deepest vertex shared by ``c``'s root path and its level-``i`` path."""
    lvl = d.level[c]
    if not 1 <= i <= lvl:
        return None
    v = c
    while lvl > i:
        v = d.hop[v]
        lvl -= 1
    return Intersection(d.path_of[v], v, d.prefix[v])
