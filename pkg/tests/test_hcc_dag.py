import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catalog_range.core import CategoryGraph, GraphError, RankedPointSet, bits_of, reachable_up
from catalog_range.hcc_dag import (HccDagIndex, ScrcDagIndex, build_hcc_dag,
                                   build_scrc_dag_trivial, load_hcc_dag, query_hcc_dag,
                                   transitive_closure)
from catalog_range.oracles import hcc_oracle
from catalog_range.ov import OvInstance, build_ov_dag
from conftest import C, PB, PM, PT, R, U
from helpers import colored_points, dags, hcc_all_intervals, random_dag, scrc_batch


def size_ok(idx):
    n = idx.points_.n
    nv = idx.graph.vertex_count
    return (idx.n_compressed_ <= 4 * n ** 1.5 + 4 * n
            and idx.n_compressed_ <= 2 * idx.n_blocks_ * nv
            and idx.n_compressed_ <= idx.flat_size_)


class TestTransitiveClosure:
    def test_fix_t1(self, fix_t1):
        assert bits_of(transitive_closure(fix_t1)[C], 4).tolist() == sorted([C, U, R])

    def test_single_vertex(self):
        assert bits_of(transitive_closure(CategoryGraph(1, ()))[0], 1).tolist() == [0]

    def test_ov_dag_rows(self):
        inst = OvInstance(((1, 0, 1), (0, 1, 1)), ((1, 1, 0), (0, 0, 1)))
        g, _, _ = build_ov_dag(inst)
        rows = transitive_closure(g)
        for v in range(g.vertex_count):
            assert bits_of(rows[v], g.vertex_count).tolist() == reachable_up(g, v)

    def test_cycle(self):
        with pytest.raises(GraphError):
            CategoryGraph(2, ((0, 1), (1, 0)))


class TestHccDag:
    def test_table_shape(self):
        g = CategoryGraph(3, ((0, 1), (1, 2)))
        idx = HccDagIndex(g).fit(np.arange(9), np.arange(9) % 3)
        assert idx.threshold_ == 3 and idx.table_.shape == (9, 3)
        assert idx.block_size_ == 2 and idx.n_blocks_ == 5

    def test_fix_t1_uses_table(self, fix_t1):
        idx = build_hcc_dag(RankedPointSet.from_points([1, 2], [C, 2]), fix_t1)
        assert idx.threshold_ == 2
        assert query_hcc_dag(idx, (1, 1)) == 3
        assert query_hcc_dag(idx, (1, 2)) == 4
        assert query_hcc_dag(idx, (3, 5)) == 0

    def test_threshold_probes(self):
        rng = np.random.default_rng(100)
        g = random_dag(rng, 100)
        idx = HccDagIndex(g).fit(np.arange(100), rng.integers(0, 100, 100))
        pts = list(zip(range(100), idx.points_.colors.tolist()))
        B = idx.threshold_
        assert B == 10
        for start in range(1, 100 - B):
            for length in (B, B + 1):
                lo, hi = start, start + length - 1
                want = hcc_oracle(pts, g, lo - 1, hi - 1)
                assert idx.predict_ranks([lo], [hi])[0] == want
                if length == B + 1:
                    assert idx.query_compressed([lo], [hi])[0] == want

    def test_sub_threshold_probe(self):
        # 25 copies of one color: the middle copy of a block is dropped, so the
        # compressed set alone misses a length-1 interval there
        g = CategoryGraph(3, ((0, 1), (1, 2)))
        idx = HccDagIndex(g).fit(np.arange(25), np.zeros(25, dtype=int))
        assert idx.threshold_ == 5 and idx.block_size_ == 3
        assert idx.query_compressed([2], [2])[0] == 0
        assert idx.predict_ranks([2], [2])[0] == 3

    def test_weighted(self, fix_t1):
        g = CategoryGraph(4, fix_t1.edges, weights=[2, 3, 5, 7])
        idx = HccDagIndex(g, weighted=True).fit([1, 2], [C, 2])
        assert idx.query(1, 1) == 12 and idx.query(1, 2) == 17

    @given(st.data(), dags(max_vertices=25, weighted=True))
    def test_matches_oracle(self, data, g):
        xs, cs = data.draw(colored_points(g.vertex_count, max_points=40))
        if not xs:
            return
        for weighted in (False, True):
            idx = HccDagIndex(g, weighted).fit(xs, cs)
            n = idx.points_.n
            a, b = np.triu_indices(n)
            exp = hcc_all_intervals(idx.points_.colors, g, weighted)[a, b]
            assert idx.predict_ranks(a + 1, b + 1).tolist() == exp.tolist()
            long = b - a + 1 > idx.threshold_
            assert idx.query_compressed(a[long] + 1, b[long] + 1).tolist() == exp[long].tolist()
            assert size_ok(idx)

    def test_random_64_size(self):
        rng = np.random.default_rng(64)
        g = random_dag(rng, 64)
        idx = HccDagIndex(g).fit(np.arange(64), rng.integers(0, 64, 64))
        assert idx.n_compressed_ <= 2 * -(-2 * 64 // idx.threshold_) * 64
        assert size_ok(idx)


class TestPersistence:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(9)
        g = random_dag(rng, 40, weighted=True)
        idx = HccDagIndex(g, weighted=True).fit(rng.integers(-50, 50, 60), rng.integers(0, 40, 60))
        path = tmp_path / "idx.hdag"
        idx.save(path)
        assert path.read_bytes()[:5] == b"HDAG1"
        back = load_hcc_dag(path)
        q = np.sort(rng.integers(-60, 60, (300, 2)), axis=1)
        assert back.predict(q).tolist() == idx.predict(q).tolist()
        assert back.graph.edges == g.edges and back.weighted

    def test_rejects_bad_files(self, tmp_path):
        bad = tmp_path / "bad"
        bad.write_bytes(b"NOPE!")
        with pytest.raises(ValueError, match="HDAG1"):
            HccDagIndex.load(bad)
        g = CategoryGraph(2, ((0, 1),))
        good = tmp_path / "good"
        HccDagIndex(g).fit([1, 2, 3], [0, 1, 0]).save(good)
        data = good.read_bytes()
        bad.write_bytes(data[:-3])
        with pytest.raises(ValueError):
            HccDagIndex.load(bad)
        bad.write_bytes(data + b"\0" * 8)
        with pytest.raises(ValueError):
            HccDagIndex.load(bad)


class TestScrcDag:
    def test_fix_p1(self, fix_p1):
        g, xs, cs = fix_p1
        idx = build_scrc_dag_trivial(RankedPointSet.from_points(xs, cs), g)
        assert idx.query(1, 3, PM) == 2
        assert idx.query(1, 3, PT) == 3
        assert idx.query(2, 2, PB) == 0

    def test_empty_subcategory_set(self):
        g = CategoryGraph(3, ((0, 1),))
        assert ScrcDagIndex(g).fit([1, 2], [1, 1]).query(0, 5, 2) == 0

    def test_invalid_vertex(self, fix_p1):
        g, xs, cs = fix_p1
        with pytest.raises(IndexError):
            ScrcDagIndex(g).fit(xs, cs).query(1, 3, 9)

    @given(st.data(), dags(max_vertices=15))
    def test_matches_oracle(self, data, g):
        xs, cs = data.draw(colored_points(g.vertex_count, max_points=20))
        if not xs:
            return
        idx = ScrcDagIndex(g).fit(xs, cs)
        n, nv = idx.points_.n, g.vertex_count
        a, b = np.triu_indices(n)
        a, b = np.repeat(a + 1, nv), np.repeat(b + 1, nv)
        v = np.tile(np.arange(nv), len(a) // nv)
        assert idx.predict_ranks(a, b, v).tolist() == \
            scrc_batch(idx.points_.colors, g, a, b, v).tolist()
