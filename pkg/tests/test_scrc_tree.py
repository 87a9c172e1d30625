import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catalog_range.core import CategoryGraph, RankedPointSet, tree_from_parents
from catalog_range.scrc_tree import ScrcTreeIndex, build_scrc_tree, query_scrc_tree
from conftest import PB, PM, PT
from helpers import colored_points, random_tree, scrc_batch, trees, up_matrix


def test_fix_p1_structure(fix_p1):
    g, xs, cs = fix_p1
    idx = build_scrc_tree(RankedPointSet.from_points(xs, cs), g)
    assert len(idx.structures_) == 1
    (rows,) = idx.path_points_.values()
    assert rows.tolist() == [[1, 0, PB], [2, 2, PT], [3, 1, PM]]


def test_fix_p1_queries(fix_p1):
    g, xs, cs = fix_p1
    idx = build_scrc_tree(RankedPointSet.from_points(xs, cs), g)
    assert query_scrc_tree(idx, (1, 3), PM) == 2
    assert query_scrc_tree(idx, (1, 3), PT) == 3
    assert query_scrc_tree(idx, (2, 2), PB) == 0


def test_star_paths():
    g = tree_from_parents([-1, 0, 0, 0])
    idx = ScrcTreeIndex(g).fit([1, 2, 3], [1, 2, 3])
    assert sorted(len(idx.decomposition_.paths[p]) for p in idx.structures_) == [1, 1, 2]
    assert idx.query(1, 3, 0) == 3
    assert idx.query(1, 3, 2) == 1


def test_empty_points(fix_p1):
    g, _, _ = fix_p1
    idx = ScrcTreeIndex(g).fit([], [])
    assert idx.structures_ == {} and idx.query(0, 9, PT) == 0


def test_invalid_query_vertex(fix_p1):
    g, xs, cs = fix_p1
    idx = ScrcTreeIndex(g).fit(xs, cs)
    with pytest.raises(IndexError):
        idx.query(1, 3, 7)


def test_rejects_dag():
    with pytest.raises(ValueError):
        ScrcTreeIndex(CategoryGraph(3, ((0, 1), (0, 2)))).fit([1], [0])


@given(st.data(), trees(max_vertices=20))
def test_matches_oracle(data, g):
    xs, cs = data.draw(colored_points(g.vertex_count, max_points=20))
    if not xs:
        return
    idx = ScrcTreeIndex(g).fit(xs, cs)
    n, nv = idx.points_.n, g.vertex_count
    a, b = np.triu_indices(n)
    a, b = np.repeat(a + 1, nv), np.repeat(b + 1, nv)
    v = np.tile(np.arange(nv), len(a) // nv)
    exp = scrc_batch(idx.points_.colors, g, a, b, v)
    assert idx.predict_ranks(a, b, v).tolist() == exp.tolist()


def test_space_bound():
    rng = np.random.default_rng(4)
    for n in (16, 256, 1024):
        g = random_tree(rng, n)
        idx = ScrcTreeIndex(g).fit(rng.integers(0, n, n), rng.integers(0, n, n))
        assert idx.n_stored_ <= n * (math.floor(math.log2(n)) + 1)


def test_path_graph_stores_heights():
    rng = np.random.default_rng(8)
    order = rng.permutation(30)
    g = CategoryGraph(30, tuple(zip(order[:-1].tolist(), order[1:].tolist())), kind="path")
    cs = rng.integers(0, 30, 40)
    idx = ScrcTreeIndex(g).fit(np.arange(40), cs)
    (rows,) = idx.path_points_.values()
    height = {int(v): i for i, v in enumerate(order)}
    assert rows[:, 1].tolist() == [height[c] for c in idx.points_.colors.tolist()]
    up = up_matrix(g)
    a = rng.integers(1, 41, 200)
    b = np.maximum(a, rng.integers(1, 41, 200))
    v = rng.integers(0, 30, 200)
    assert idx.predict_ranks(a, b, v).tolist() == scrc_batch(idx.points_.colors, g, a, b, v,
                                                             up).tolist()
