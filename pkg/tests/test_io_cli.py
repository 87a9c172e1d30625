import subprocess
import sys

import numpy as np
import pytest

from catalog_range import io
from catalog_range.cli import main
from catalog_range.core import CategoryGraph
from catalog_range.hcc_dag import HccDagIndex
from catalog_range.oracles import hcc_oracle, scrc_oracle
from catalog_range.ov import OvInstance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def t1_files(tmp_path, fix_t1):
    io.write_graph(tmp_path / "g.txt", fix_t1)
    io.write_points(tmp_path / "p.txt", [1, 2], [3, 2])
    io.write_rows(tmp_path / "q.txt", [(1, 1), (1, 2), (5, 9)])
    return tmp_path


@pytest.fixture
def p1_files(tmp_path, fix_p1):
    g, xs, cs = fix_p1
    io.write_graph(tmp_path / "g.txt", g)
    io.write_points(tmp_path / "p.txt", xs, cs)
    return tmp_path


class TestFormats:
    def test_graph_round_trip(self, fix_t1):
        g = CategoryGraph(4, fix_t1.edges, kind="tree", weights=[1, 4, 1, 2])
        back = io.parse_graph(io.format_graph(g))
        assert (back.vertex_count, back.edges, back.kind, back.weights) == \
            (g.vertex_count, g.edges, g.kind, g.weights)

    def test_graph_errors(self):
        for text in ("", "3", "2 dag\n0 1 2\n", "2 dag\n# colors\n", "2 dag\n0 1\n1 0\n"):
            with pytest.raises(ValueError):
                io.parse_graph(text)

    def test_rows(self):
        assert io.parse_rows("1 2\n\n3 4\n").tolist() == [[1, 2], [3, 4]]
        with pytest.raises(ValueError):
            io.parse_rows("1 2 3\n")
        with pytest.raises(ValueError):
            io.parse_rows("1 2\n1 2 3\n", (2, 3))

    def test_ov_round_trip(self):
        inst = OvInstance(((1, 0, 1),), ((0, 1, 1), (1, 1, 1)))
        assert io.parse_ov(io.format_ov(inst)) == inst
        with pytest.raises(ValueError):
            io.parse_ov("10\n01\n")
        with pytest.raises(ValueError):
            io.parse_ov("12\n\n01\n")


class TestGen:
    @pytest.mark.parametrize("kind", ["tree", "path", "caterpillar", "dag"])
    def test_deterministic(self, tmp_path, capsys, kind):
        for d in ("a", "b"):
            assert run(capsys, "gen", kind, 8, "--seed", 1, "--out", tmp_path / d)[0] == 0
        for name in ("graph.txt", "points.txt", "queries.txt"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_dag_is_sparse_and_acyclic(self, tmp_path, capsys):
        run(capsys, "gen", "dag", 100, "--out", tmp_path)
        g = io.read_graph(tmp_path / "graph.txt")
        assert g.vertex_count == 100 and len(g.edges) <= 300

    def test_caterpillar_flags(self, tmp_path, capsys):
        run(capsys, "gen", "caterpillar", 1, "--legs", 4, "--leg-length", 2, "--out", tmp_path)
        g = io.read_graph(tmp_path / "graph.txt")
        assert g.kind == "caterpillar" and g.vertex_count == 12

    def test_ov(self, tmp_path, capsys):
        run(capsys, "gen", "ov", 16, "--dim", 4, "--out", tmp_path)
        inst = io.read_ov(tmp_path / "ov.txt")
        assert len(inst.A) + len(inst.B) == 32 and inst.dim == 4

    def test_scrc_queries_have_vertex(self, tmp_path, capsys):
        run(capsys, "gen", "tree", 10, "--scrc", "--queries", 5, "--out", tmp_path)
        assert io.read_queries(tmp_path / "queries.txt").shape == (5, 3)

    def test_bad_n(self, tmp_path, capsys):
        assert run(capsys, "gen", "tree", 0, "--out", tmp_path)[0] == 2


class TestBuildQuery:
    def test_hcc_tree(self, t1_files, capsys):
        d = t1_files
        code, out, _ = run(capsys, "query", "--structure", "hcc-tree", "--graph", d / "g.txt",
                           "--points", d / "p.txt", "--queries", d / "q.txt")
        assert code == 0 and out.split() == ["3", "4", "0"]

    @pytest.mark.parametrize("structure", ["hcc-tree", "hcc-dag", "scrc-tree",
                                           "scrc-dag-trivial"])
    def test_build_reports_size(self, t1_files, capsys, structure):
        d = t1_files
        code, out, _ = run(capsys, "build", "--structure", structure, "--graph", d / "g.txt",
                           "--points", d / "p.txt")
        assert code == 0 and out.startswith(f"structure={structure} n=2 stored=")

    def test_saved_index(self, t1_files, capsys):
        d = t1_files
        code, _, _ = run(capsys, "build", "--structure", "hcc-dag", "--graph", d / "g.txt",
                         "--points", d / "p.txt", "--out", d / "idx.hdag")
        assert code == 0 and (d / "idx.hdag").read_bytes()[:5] == b"HDAG1"
        code, out, _ = run(capsys, "query", "--index", d / "idx.hdag", "--queries", d / "q.txt")
        assert code == 0 and out.split() == ["3", "4", "0"]

    def test_scrc_query(self, p1_files, capsys):
        d = p1_files
        io.write_rows(d / "q.txt", [(1, 3, 1), (1, 3, 2), (2, 2, 0)])
        for structure in ("scrc-tree", "scrc-dag-trivial"):
            code, out, _ = run(capsys, "query", "--structure", structure, "--graph", d / "g.txt",
                               "--points", d / "p.txt", "--queries", d / "q.txt")
            assert code == 0 and out.split() == ["2", "3", "0"]

    def test_usage_errors(self, t1_files, capsys):
        d = t1_files
        assert run(capsys, "build", "--structure", "hcc-tree", "--graph", d / "g.txt",
                   "--points", d / "p.txt", "--out", d / "x")[0] == 2
        assert run(capsys, "build", "--structure", "hcc-tree", "--graph", d / "g.txt")[0] == 2
        assert run(capsys, "query", "--structure", "hcc-tree", "--graph", d / "g.txt",
                   "--points", d / "nope.txt", "--queries", d / "q.txt")[0] == 2
        (d / "bad.txt").write_text("2 tree\n0 1\n1 0\n")
        assert run(capsys, "build", "--structure", "hcc-tree", "--graph", d / "bad.txt",
                   "--points", d / "p.txt")[0] == 2
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_tree_structure_on_dag_is_usage_error(self, tmp_path, capsys):
        io.write_graph(tmp_path / "g.txt", CategoryGraph(3, ((0, 1), (0, 2))))
        io.write_points(tmp_path / "p.txt", [1], [0])
        assert run(capsys, "build", "--structure", "hcc-tree", "--graph", tmp_path / "g.txt",
                   "--points", tmp_path / "p.txt")[0] == 2


class TestVerify:
    def test_hcc_tree_fix_t1(self, t1_files, capsys):
        d = t1_files
        code, out, _ = run(capsys, "verify", "--structure", "hcc-tree", "--graph", d / "g.txt",
                           "--points", d / "p.txt")
        assert code == 0 and out.startswith("PASS hcc-tree n=2 mode=exhaustive")

    def test_scrc_dag_fix_p1(self, p1_files, capsys):
        d = p1_files
        code, out, _ = run(capsys, "verify", "--structure", "scrc-dag-trivial", "--graph",
                           d / "g.txt", "--points", d / "p.txt")
        assert code == 0 and out.startswith("PASS")

    def test_sampled_mode(self, tmp_path, capsys):
        run(capsys, "gen", "dag", 150, "--seed", 4, "--out", tmp_path)
        code, out, _ = run(capsys, "verify", "--structure", "hcc-dag", "--weighted", "--graph",
                           tmp_path / "graph.txt", "--points", tmp_path / "points.txt",
                           "--queries", 300)
        assert code == 0 and "sampled(300)" in out

    def test_corrupted_index_fails(self, tmp_path, capsys):
        run(capsys, "gen", "dag", 30, "--seed", 2, "--out", tmp_path)
        run(capsys, "build", "--structure", "hcc-dag", "--graph", tmp_path / "graph.txt",
            "--points", tmp_path / "points.txt", "--out", tmp_path / "good.hdag")
        code, _, _ = run(capsys, "verify", "--index", tmp_path / "good.hdag")
        assert code == 0
        idx = HccDagIndex.load(tmp_path / "good.hdag")
        idx.table_[3, 1] += 1
        idx.save(tmp_path / "bad.hdag")
        code, out, _ = run(capsys, "verify", "--index", tmp_path / "bad.hdag")
        assert code == 1
        assert out.startswith("FAIL hcc-dag") and "counterexample" in out

    def test_truncated_index_is_usage_error(self, tmp_path, capsys):
        (tmp_path / "junk.hdag").write_bytes(b"HDAG1\x01")
        assert run(capsys, "verify", "--index", tmp_path / "junk.hdag")[0] == 2


class TestReduce:
    def test_path_round_trip(self, p1_files, capsys):
        d = p1_files
        assert run(capsys, "reduce", "path-to-distinct-y", "--graph", d / "g.txt", "--points",
                   d / "p.txt", "--out", d / "r")[0] == 0
        assert io.parse_rows((d / "r" / "points2d.txt").read_text()).tolist() == \
            [[1, 0], [2, 2], [3, 1]]
        assert run(capsys, "reduce", "distinct-y-to-path", "--points", d / "r" / "points2d.txt",
                   "--out", d / "back")[0] == 0
        assert io.read_graph(d / "back" / "graph.txt").kind == "path"

    def test_crc_to_hcc(self, tmp_path, capsys):
        io.write_points(tmp_path / "p.txt", [1, 2, 3], [5, 9, 5])
        assert run(capsys, "reduce", "crc-to-hcc", "--points", tmp_path / "p.txt",
                   "--out", tmp_path / "r")[0] == 0
        full = io.read_graph(tmp_path / "r" / "full.graph.txt")
        xs, cs = io.read_points(tmp_path / "r" / "full.points.txt")
        pts = list(zip(xs.tolist(), cs.tolist()))
        assert full.vertex_count == 3 and hcc_oracle(pts, full, 1, 3) == 3

    def test_summax_and_dominance(self, tmp_path, capsys):
        io.write_rows(tmp_path / "sm.txt", [(1, 0, 5), (2, 0, 2), (3, 1, 7)])
        assert run(capsys, "reduce", "summax-to-caterpillar", "--points", tmp_path / "sm.txt",
                   "--out", tmp_path / "cat")[0] == 0
        g = io.read_graph(tmp_path / "cat" / "graph.txt")
        assert g.kind == "caterpillar"
        assert run(capsys, "reduce", "dominance-to-summax", "--points", tmp_path / "sm.txt",
                   "--out", tmp_path / "dom")[0] == 0
        assert len(io.parse_rows((tmp_path / "dom" / "paired.txt").read_text(), (3,))) == 6
        assert run(capsys, "reduce", "colored3sided-to-dom3d", "--points", tmp_path / "sm.txt",
                   "--out", tmp_path / "d3")[0] == 0
        assert io.parse_rows((tmp_path / "d3" / "points3d.txt").read_text(), (4,))[0].tolist() \
            == [-1, 0, 1, 5]

    def test_ov_to_dag(self, tmp_path, capsys):
        (tmp_path / "ov.txt").write_text("10\n\n11\n")
        assert run(capsys, "reduce", "ov-to-dag", "--ov", tmp_path / "ov.txt",
                   "--out", tmp_path / "r")[0] == 0
        assert (tmp_path / "r" / "expected.txt").read_text().split() == ["4"]

    def test_missing_input(self, tmp_path, capsys):
        assert run(capsys, "reduce", "crc-to-hcc", "--out", tmp_path)[0] == 2


class TestOvCommand:
    @pytest.mark.parametrize("method", ["hcc", "scrc", "brute"])
    def test_examples(self, tmp_path, capsys, method):
        (tmp_path / "yes.txt").write_text("10\n\n01\n")
        (tmp_path / "no.txt").write_text("1\n\n1\n")
        assert run(capsys, "ov", tmp_path / "yes.txt", "--method", method)[1].strip() == \
            "ORTHOGONAL 0 0"
        assert run(capsys, "ov", tmp_path / "no.txt", "--method", method)[1].strip() == "NONE"

    def test_bad_file(self, tmp_path, capsys):
        (tmp_path / "bad.txt").write_text("10\n\n1\n")
        assert run(capsys, "ov", tmp_path / "bad.txt")[0] == 2


class TestBench:
    def test_rows_and_columns(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("CATALOG_RANGE_THREADS", "1")
        code, out, _ = run(capsys, "bench", "--structure", "hcc-tree", "--structure", "hcc-dag",
                           "--sizes", "64,256", "--queries", 50, "--out", tmp_path / "b.tsv")
        assert code == 0
        lines = (tmp_path / "b.tsv").read_text().splitlines()
        assert lines[0].split("\t") == ["structure", "n", "edges", "build_ms", "mean_query_ns",
                                        "median_query_ns", "stored"]
        rows = [dict(zip(lines[0].split("\t"), ln.split("\t"))) for ln in lines[1:]]
        assert len(rows) == 4
        for r in rows:
            assert float(r["build_ms"]) >= 0 and float(r["mean_query_ns"]) >= 0
            if r["structure"] == "hcc-dag":
                n = int(r["n"])
                assert int(r["stored"]) <= 4 * n ** 1.5 + 4 * n
        again = run(capsys, "bench", "--structure", "hcc-tree", "--structure", "hcc-dag",
                    "--sizes", "64,256", "--queries", 50)[1].splitlines()
        assert [ln.split("\t")[:3] for ln in again] == [ln.split("\t")[:3] for ln in lines]

    def test_bad_sizes(self, capsys):
        assert run(capsys, "bench", "--structure", "hcc-tree", "--sizes", "x")[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "catalog_range", "gen", "tree", "5",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "graph.txt" in proc.stdout


def test_scrc_oracle_sanity(fix_p1):
    g, xs, cs = fix_p1
    assert scrc_oracle(list(zip(xs, cs)), g, 1, 3, 1) == 2
    assert np.all(np.asarray(xs) > 0)
