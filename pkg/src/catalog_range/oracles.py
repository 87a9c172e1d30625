"""Brute-force reference answers for every query family.

Everything here is a direct scan over plain Python tuples and does its own
graph walks; nothing is shared with the indexes it is used to check.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence


def _parent_lists(graph) -> list[list[int]]:
    parents = [[] for _ in range(graph.vertex_count)]
    for u, v in graph.edges:
        parents[u].append(v)
    return parents


def _closure_up(parents, sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    todo = list(seen)
    while todo:
        u = todo.pop()
        for p in parents[u]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _up_sets(graph) -> list[set[int]]:
    parents = _parent_lists(graph)
    return [_closure_up(parents, [s]) for s in range(graph.vertex_count)]


def _down_set(graph, v: int) -> set[int]:
    children = [[] for _ in range(graph.vertex_count)]
    for a, b in graph.edges:
        children[b].append(a)
    seen = {v}
    todo = [v]
    while todo:
        u = todo.pop()
        for c in children[u]:
            if c not in seen:
                seen.add(c)
                todo.append(c)
    return seen


def crc_oracle(points: Iterable[tuple[int, int]], lo: int, hi: int,
               weights: Mapping[int, int] | None = None) -> int:
    """Distinct colors among ``(x, color)`` points with ``lo <= x <= hi``."""
    present = {c for x, c in points if lo <= x <= hi}
    if weights is None:
        return len(present)
    return sum(weights[c] for c in present)


def hcc_oracle(points: Iterable[tuple[int, int]], graph, lo: int, hi: int,
               weighted: bool = False) -> int:
    """Size (or weight) of the union of super-categories of colors in range."""
    union = _closure_up(_parent_lists(graph), {c for x, c in points if lo <= x <= hi})
    if weighted:
        return sum(graph.weights[v] for v in union)
    return len(union)


def hcc_oracle_all_intervals(colors: Sequence[int], graph, weighted: bool = False) -> list[list[int]]:
    """``out[i][j]`` = HCC answer on rank interval ``[i+1, j+1]`` (``j >= i``).

    Same union semantics as :func:`hcc_oracle`, swept incrementally so the
    whole ``O(n^2)`` table is affordable in tests.
    """
    up = _up_sets(graph)
    n = len(colors)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        union: set[int] = set()
        total = 0
        for j in range(i, n):
            new = up[colors[j]] - union
            if new:
                union |= new
                total += sum(graph.weights[v] for v in new) if weighted else len(new)
            out[i][j] = total
    return out


def scrc_oracle(points: Iterable[tuple[int, int]], graph, lo: int, hi: int, v_q: int) -> int:
    """Distinct colors in range that are sub-categories of ``v_q``."""
    below = _down_set(graph, v_q)
    return len({c for x, c in points if lo <= x <= hi and c in below})


def summax_oracle(points: Iterable[tuple[int, int, int]], lo: int, hi: int) -> int:
    """Sum over colors of the largest weight of that color in range."""
    best: dict[int, int] = {}
    for x, c, w in points:
        if lo <= x <= hi:
            best[c] = max(best.get(c, w), w)
    return sum(best.values())


def dominance_oracle_2d(points: Iterable[tuple[int, int, int]], qx: int, qy: int) -> int:
    return sum(w for x, y, w in points if x <= qx and y <= qy)


def dominance_oracle_3d(points: Iterable[tuple], qx: int, qy: int, qz: int) -> int:
    total = 0
    for p in points:
        x, y, z = p[0], p[1], p[2]
        if x <= qx and y <= qy and z <= qz:
            total += p[3] if len(p) > 3 else 1
    return total


def dominance_color_oracle_3d(points: Iterable[tuple[int, int, int, int]],
                              qx: int, qy: int, qz: int) -> int:
    """Distinct colors among ``(x, y, z, color)`` points dominated by the corner."""
    return len({c for x, y, z, c in points if x <= qx and y <= qy and z <= qz})


def distinct_y_3sided_oracle(points: Iterable[tuple[int, int]], l: int, r: int, t: int) -> int:
    if l > r:
        raise ValueError("empty x-range")
    return len({y for x, y in points if l <= x <= r and y <= t})


def color_3sided_oracle(points: Iterable[tuple[int, int, int]], l: int, r: int, t: int) -> int:
    if l > r:
        raise ValueError("empty x-range")
    return len({c for x, y, c in points if l <= x <= r and y <= t})


def reachability_matrix(graph) -> list[list[bool]]:
    """``m[v][u]`` is true iff ``u`` is a super-category of ``v`` (or ``u == v``)."""
    up = _up_sets(graph)
    return [[u in up[v] for u in range(graph.vertex_count)] for v in range(graph.vertex_count)]
