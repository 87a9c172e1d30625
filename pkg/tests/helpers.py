"""Instance builders and vectorized brute-force sweeps for the test suite.

The sweeps start from ``oracles.reachability_matrix`` (plain graph walks) and
evaluate whole query batches with numpy, so large exhaustive checks stay fast
without touching any index code.
"""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from catalog_range.core import CategoryGraph, tree_from_parents
from catalog_range.oracles import reachability_matrix


def up_matrix(g: CategoryGraph) -> np.ndarray:
    """Boolean ``(V, V)``; row ``v`` marks the super-categories of ``v``."""
    return np.array(reachability_matrix(g), dtype=bool)


def hcc_all_intervals(colors, g: CategoryGraph, weighted: bool = False,
                      up: np.ndarray | None = None) -> np.ndarray:
    """``out[i, j]`` = HCC on rank interval ``[i+1, j+1]``; 0 below the diagonal."""
    up = up_matrix(g) if up is None else up
    colors = np.asarray(colors, dtype=np.int64)
    n = len(colors)
    w = np.asarray(g.weights if weighted else [1] * g.vertex_count, dtype=np.int64)
    packed = np.packbits(up, axis=1, bitorder="little")
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        acc = np.bitwise_or.accumulate(packed[colors[i:]], axis=0)
        if weighted:
            bits = np.unpackbits(acc, axis=1, count=g.vertex_count, bitorder="little")
            out[i, i:] = bits.astype(np.int64) @ w
        else:
            out[i, i:] = np.bitwise_count(acc).sum(axis=1)
    return out


def scrc_batch(colors, g: CategoryGraph, a, b, v, up: np.ndarray | None = None) -> np.ndarray:
    """SCRC on rank intervals ``[a, b]`` with query vertices ``v``."""
    up = up_matrix(g) if up is None else up
    colors = np.asarray(colors, dtype=np.int64)
    out = np.zeros(len(a), dtype=np.int64)
    for k, (lo, hi, vq) in enumerate(zip(a, b, v)):
        if lo <= hi:
            present = np.unique(colors[lo - 1:hi])
            out[k] = int(up[present, vq].sum())
    return out


def dominance_2d_batch(points, qx, qy) -> np.ndarray:
    p = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    mask = (p[None, :, 0] <= np.asarray(qx)[:, None]) & (p[None, :, 1] <= np.asarray(qy)[:, None])
    return mask.astype(np.int64) @ p[:, 2]


def dominance_3d_batch(points, qx, qy, qz) -> np.ndarray:
    p = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    mask = ((p[None, :, 0] <= np.asarray(qx)[:, None])
            & (p[None, :, 1] <= np.asarray(qy)[:, None])
            & (p[None, :, 2] <= np.asarray(qz)[:, None]))
    return mask.sum(axis=1)


def distinct_3sided_batch(xs, keys, l, r, t, ys=None) -> np.ndarray:
    """Distinct ``keys`` among points with ``l <= x <= r`` and ``y <= t``;
    ``ys`` defaults to ``keys`` (distinct-Y counting)."""
    xs = np.asarray(xs)
    keys = np.asarray(keys)
    ys = keys if ys is None else np.asarray(ys)
    _, key_id = np.unique(keys, return_inverse=True)
    onehot = np.zeros((len(keys), key_id.max() + 1 if len(keys) else 0), dtype=np.int64)
    onehot[np.arange(len(keys)), key_id] = 1
    mask = ((xs[None, :] >= np.asarray(l)[:, None]) & (xs[None, :] <= np.asarray(r)[:, None])
            & (ys[None, :] <= np.asarray(t)[:, None]))
    return (mask.astype(np.int64) @ onehot > 0).sum(axis=1)


def random_tree(rng: np.random.Generator, n: int, *, weighted: bool = False,
                shape: str = "recursive") -> CategoryGraph:
    """Random rooted tree; ``shape`` picks how parents are drawn.

    ``recursive``: uniform over earlier vertices.  ``deep``: among the last
    few vertices (long chains).  ``binary``: heap-shaped.
    """
    parent = [-1]
    for i in range(1, n):
        if shape == "deep":
            parent.append(int(rng.integers(max(0, i - 3), i)))
        elif shape == "binary":
            parent.append((i - 1) // 2)
        else:
            parent.append(int(rng.integers(0, i)))
    perm = rng.permutation(n)
    relabeled = [0] * n
    for i, p in enumerate(parent):
        relabeled[perm[i]] = -1 if p < 0 else int(perm[p])
    weights = rng.integers(1, 17, size=n).tolist() if weighted else None
    return tree_from_parents(relabeled, "tree", weights)


def random_dag(rng: np.random.Generator, n: int, *, weighted: bool = False) -> CategoryGraph:
    """Sparse DAG with at most ``3n`` edges."""
    order = rng.permutation(n)
    edges = set()
    for _ in range(int(rng.integers(0, 3 * n + 1))):
        if n < 2:
            break
        i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
        edges.add((int(order[j]), int(order[i])))
    weights = rng.integers(0, 9, size=n).tolist() if weighted else None
    return CategoryGraph(n, tuple(sorted(edges)), kind="dag", weights=weights)


@st.composite
def trees(draw, max_vertices: int = 24, weighted: bool = False):
    n = draw(st.integers(1, max_vertices))
    parent = [-1] + [draw(st.integers(0, i - 1)) for i in range(1, n)]
    weights = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n)) if weighted else None
    return tree_from_parents(parent, "tree", weights)


@st.composite
def dags(draw, max_vertices: int = 16, weighted: bool = False):
    n = draw(st.integers(1, max_vertices))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] > e[1])
    edges = draw(st.lists(pairs, max_size=3 * n, unique=True)) if n > 1 else []
    weights = draw(st.lists(st.integers(0, 9), min_size=n, max_size=n)) if weighted else None
    return CategoryGraph(n, tuple(edges), kind="dag", weights=weights)


@st.composite
def colored_points(draw, vertex_count: int, max_points: int = 30, span: int = 40):
    n = draw(st.integers(0, max_points))
    xs = draw(st.lists(st.integers(0, span), min_size=n, max_size=n))
    cs = draw(st.lists(st.integers(0, vertex_count - 1), min_size=n, max_size=n))
    return xs, cs
