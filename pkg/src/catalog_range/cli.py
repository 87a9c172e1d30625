"""Command-line interface: ``catalog-range {gen,build,query,reduce,verify,bench,ov}``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import generate, io
from .core import CategoryGraph, RankedPointSet, SumMaxInstance
from .equiv import (colored3sided_to_dom3dcolor, crc_to_hcc, distinctY_to_scrc_path,
                    dominance_to_summax, scrc_path_to_distinctY, summax_to_caterpillar)
from .hcc_dag import HccDagIndex, ScrcDagIndex
from .hcc_tree import HccPathIndex, HccTreeIndex
from .oracles import hcc_oracle, hcc_oracle_all_intervals, scrc_oracle
from .ov import build_ov_dag, decide_ov_hcc, decide_ov_scrc, find_orthogonal_pair
from .scrc_tree import ScrcTreeIndex

THREADS_ENV = "CATALOG_RANGE_THREADS"
EXHAUSTIVE_LIMIT = 64
BENCH_COLUMNS = ("structure", "n", "edges", "build_ms", "mean_query_ns",
                 "median_query_ns", "stored")

# name -> (estimator class, takes a query vertex, accepts `weighted`)
STRUCTURES = {
    "hcc-tree": (HccTreeIndex, False, True),
    "hcc-path": (HccPathIndex, False, True),
    "hcc-dag": (HccDagIndex, False, True),
    "scrc-tree": (ScrcTreeIndex, True, False),
    "scrc-dag-trivial": (ScrcDagIndex, True, False),
}


class UsageError(Exception):
    pass


def make_structure(name: str, g: CategoryGraph, weighted: bool = False):
    cls, _, takes_weight = STRUCTURES[name]
    if weighted and not takes_weight:
        raise UsageError(f"{name} has no weighted mode")
    return cls(g, weighted) if takes_weight else cls(g)


def stored_entries(idx) -> int:
    if isinstance(idx, HccDagIndex):
        return idx.n_compressed_
    return getattr(idx, "n_stored_", idx.points_.n)


def thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


# -- gen ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.n < 1:
        raise UsageError("n must be >= 1")
    if args.kind == "ov":
        path = out / "ov.txt"
        io.write_ov(path, generate.random_ov(args.n, args.dim, args.seed,
                                             density=args.density, plant=args.plant))
        print(path)
        return 0
    if args.kind == "tree":
        g = generate.random_tree(args.n, args.seed, weighted=args.weighted)
    elif args.kind == "path":
        g = generate.random_path(args.n, args.seed, weighted=args.weighted)
    elif args.kind == "caterpillar":
        legs = args.legs or max(1, args.n // (args.leg_length + 1))
        g = generate.random_caterpillar(legs, args.leg_length, args.seed, weighted=args.weighted)
    else:
        g = generate.random_dag(args.n, args.seed, edges_per_vertex=args.edges_per_vertex,
                                weighted=args.weighted)
    count = args.points if args.points is not None else args.n
    xs, colors = generate.random_points(g, count, args.seed)
    span = max(2 * count, 1)
    queries = generate.random_queries(args.queries, span, args.seed,
                                      vertex_count=g.vertex_count if args.scrc else None)
    io.write_graph(out / "graph.txt", g)
    io.write_points(out / "points.txt", xs, colors)
    io.write_rows(out / "queries.txt", queries)
    for name in ("graph.txt", "points.txt", "queries.txt"):
        print(out / name)
    return 0


# -- build / query -------------------------------------------------------------

def _load_instance(args):
    if not args.graph or not args.points:
        raise UsageError("--graph and --points are required")
    g = io.read_graph(args.graph)
    xs, colors = io.read_points(args.points)
    return g, xs, colors


def _fit(args):
    g, xs, colors = _load_instance(args)
    idx = make_structure(args.structure, g, args.weighted)
    t0 = time.perf_counter()
    idx.fit(xs, colors)
    return idx, (time.perf_counter() - t0) * 1e3


def cmd_build(args) -> int:
    if args.out and args.structure != "hcc-dag":
        raise UsageError("only hcc-dag indexes can be saved with --out")
    idx, ms = _fit(args)
    print(f"structure={args.structure} n={idx.points_.n} stored={stored_entries(idx)} "
          f"build_ms={ms:.1f}")
    if args.out:
        idx.save(args.out)
        print(args.out)
    return 0


def cmd_query(args) -> int:
    if args.index:
        idx = HccDagIndex.load(args.index)
        vertex_query = False
    else:
        idx, _ = _fit(args)
        vertex_query = STRUCTURES[args.structure][1]
    Q = io.read_queries(args.queries)
    if Q.size and Q.shape[1] != (3 if vertex_query else 2):
        raise UsageError("query rows must be 'lo hi v_q'" if vertex_query else
                         "query rows must be 'lo hi'")
    answers = idx.predict(Q) if len(Q) else []
    sys.stdout.write("".join(f"{int(a)}\n" for a in answers))
    return 0


# -- reduce ------------------------------------------------------------------

def _need(value, flag):
    if not value:
        raise UsageError(f"{flag} is required for this reduction")
    return value


def cmd_reduce(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name, text):
        (out / name).write_text(text)
        written.append(out / name)

    kind = args.kind
    if kind == "path-to-distinct-y":
        g = io.read_graph(_need(args.graph, "--graph"))
        xs, colors = io.read_points(_need(args.points, "--points"))
        pts, _ = scrc_path_to_distinctY(xs, colors, g)
        emit("points2d.txt", io.format_rows(pts))
    elif kind == "distinct-y-to-path":
        rows = io.parse_rows(Path(_need(args.points, "--points")).read_text(), (2,))
        xs, colors, g, _ = distinctY_to_scrc_path(rows)
        emit("graph.txt", io.format_graph(g))
        emit("points.txt", io.format_rows(zip(xs, colors)))
    elif kind == "crc-to-hcc":
        xs, colors = io.read_points(_need(args.points, "--points"))
        red = crc_to_hcc(xs, colors)
        emit("full.graph.txt", io.format_graph(red.full.graph))
        emit("full.points.txt", io.format_rows(zip(xs, red.full_colors)))
        emit("collapsed.graph.txt", io.format_graph(red.collapsed.graph))
        emit("collapsed.points.txt", io.format_rows(zip(xs, red.collapsed_colors)))
    elif kind == "summax-to-caterpillar":
        rows = io.parse_rows(Path(_need(args.points, "--points")).read_text(), (3,))
        n = int(rows[:, 0].max()) if len(rows) else 0
        cat, _ = summax_to_caterpillar(SumMaxInstance(tuple(map(tuple, rows.tolist())), n))
        emit("graph.txt", io.format_graph(cat.graph))
        emit("points.txt", io.format_rows(zip(cat.positions, cat.vertices)))
    elif kind == "dominance-to-summax":
        rows = io.parse_rows(Path(_need(args.points, "--points")).read_text(), (3,))
        red = dominance_to_summax(rows)
        emit("single.txt", io.format_rows(red.single.points))
        emit("paired.txt", io.format_rows(red.paired.points))
        emit("coords.txt", io.format_rows((c,) for c in red.cmap.coords))
    elif kind == "colored3sided-to-dom3d":
        rows = io.parse_rows(Path(_need(args.points, "--points")).read_text(), (3,))
        pts, _ = colored3sided_to_dom3dcolor(rows)
        emit("points3d.txt", io.format_rows(pts))
    elif kind == "ov-to-dag":
        inst = io.read_ov(_need(args.ov, "--ov"))
        g, pts, expected = build_ov_dag(inst)
        emit("graph.txt", io.format_graph(g))
        emit("points.txt", io.format_rows(zip(pts.coords, pts.colors)))
        emit("expected.txt", io.format_rows((e,) for e in expected))
    for path in written:
        print(path)
    return 0


# -- verify ------------------------------------------------------------------

def _rank_queries(n: int, nv: int, vertex_query: bool, budget: int, rng):
    if n <= EXHAUSTIVE_LIMIT:
        a, b = np.triu_indices(n)
        a, b = a + 1, b + 1
        if vertex_query:
            a, b = np.repeat(a, nv), np.repeat(b, nv)
            return a, b, np.tile(np.arange(nv), len(a) // max(nv, 1))
        return a, b, None
    ends = np.sort(rng.integers(1, n + 1, size=(budget, 2)), axis=1)
    v = rng.integers(0, nv, size=budget) if vertex_query else None
    return ends[:, 0], ends[:, 1], v


def _expected(g, colors, a, b, v, weighted):
    pts = list(enumerate(colors.tolist(), start=1))
    if v is not None:
        return np.array([scrc_oracle(pts, g, lo, hi, vq) for lo, hi, vq in zip(a, b, v)])
    if len(colors) <= EXHAUSTIVE_LIMIT:
        table = hcc_oracle_all_intervals(colors.tolist(), g, weighted)
        return np.array([table[lo - 1][hi - 1] for lo, hi in zip(a, b)], dtype=np.int64)
    return np.array([hcc_oracle(pts, g, lo, hi, weighted) for lo, hi in zip(a, b)])


def find_mismatch(idx, g, colors, vertex_query, weighted, budget, seed):
    """First ``(a, b, v, expected, got)`` where ``idx`` disagrees with the oracle."""
    n = len(colors)
    if n == 0:
        return None
    rng = np.random.default_rng(seed)
    a, b, v = _rank_queries(n, g.vertex_count, vertex_query, budget, rng)
    got = idx.predict_ranks(a, b, v) if vertex_query else idx.predict_ranks(a, b)
    exp = _expected(g, colors, a, b, v, weighted)
    bad = np.flatnonzero(got != exp)
    if not bad.size:
        return None
    k = bad[np.argmin((b - a)[bad])]
    return int(a[k]), int(b[k]), None if v is None else int(v[k]), int(exp[k]), int(got[k])


def shrink(build, g, colors, vertex_query, weighted, budget, seed):
    """Halve the rank-ordered point set while some half still mismatches."""
    current = colors
    found = find_mismatch(build(current), g, current, vertex_query, weighted, budget, seed)
    while len(current) > 1:
        half = len(current) // 2
        for part in (current[:half], current[half:]):
            hit = find_mismatch(build(part), g, part, vertex_query, weighted, budget, seed)
            if hit:
                current, found = part, hit
                break
        else:
            break
    return current, found


def _report_failure(name, colors, hit) -> None:
    a, b, v, exp, got = hit
    vq = "" if v is None else f" v_q={v}"
    print(f"FAIL {name} n={len(colors)} query=[{a},{b}]{vq} expected={exp} got={got}")
    print("counterexample points (rank color):")
    for r, c in enumerate(colors.tolist(), start=1):
        print(f"  {r} {c}")


def cmd_verify(args) -> int:
    if args.index:
        if args.structure not in (None, "hcc-dag"):
            raise UsageError("--index holds an hcc-dag index")
        idx = HccDagIndex.load(args.index)
        colors = idx.points_.colors
        hit = find_mismatch(idx, idx.graph, colors, False, idx.weighted, args.queries, args.seed)
        if hit:
            _report_failure("hcc-dag", colors, hit)
            return 1
        print(f"PASS hcc-dag n={len(colors)}")
        return 0

    if not args.structure:
        raise UsageError("--structure is required")
    g, xs, colors = _load_instance(args)
    pts = RankedPointSet.from_points(xs, colors, g)
    vertex_query = STRUCTURES[args.structure][1]

    def build(cols):
        return make_structure(args.structure, g, args.weighted)._fit_ranked(
            RankedPointSet.from_points(np.arange(1, len(cols) + 1), cols))

    hit = find_mismatch(build(pts.colors), g, pts.colors, vertex_query, args.weighted,
                        args.queries, args.seed)
    if hit:
        small, hit = shrink(build, g, pts.colors, vertex_query, args.weighted,
                            args.queries, args.seed)
        _report_failure(args.structure, small, hit)
        return 1
    mode = "exhaustive" if pts.n <= EXHAUSTIVE_LIMIT else f"sampled({args.queries})"
    print(f"PASS {args.structure} n={pts.n} mode={mode}")
    return 0


# -- bench -------------------------------------------------------------------

def _bench_graph(name: str, n: int, seed: int) -> CategoryGraph:
    if name == "hcc-path":
        return generate.random_path(n, seed)
    if name in ("hcc-dag", "scrc-dag-trivial"):
        return generate.random_dag(n, seed)
    return generate.random_tree(n, seed)


def bench_one(name: str, n: int, seed: int, queries: int) -> dict:
    g = _bench_graph(name, n, seed)
    xs, colors = generate.random_points(g, n, seed)
    idx = make_structure(name, g)
    t0 = time.perf_counter()
    idx.fit(xs, colors)
    build_ms = (time.perf_counter() - t0) * 1e3
    vertex_query = STRUCTURES[name][1]
    Q = generate.random_queries(queries + 50, 2 * n, seed,
                                vertex_count=g.vertex_count if vertex_query else None)
    rows = Q.tolist()
    times = []
    for i, q in enumerate(rows):
        t = time.perf_counter_ns()
        idx.query(*q)
        if i >= 50:  # first 50 are warmup
            times.append(time.perf_counter_ns() - t)
    return {
        "structure": name, "n": n, "edges": len(g.edges), "build_ms": round(build_ms, 3),
        "mean_query_ns": int(np.mean(times)) if times else 0,
        "median_query_ns": int(np.median(times)) if times else 0,
        "stored": stored_entries(idx),
    }


def bench_tsv(records) -> str:
    lines = ["\t".join(BENCH_COLUMNS)]
    lines += ["\t".join(str(r[c]) for c in BENCH_COLUMNS) for r in records]
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise UsageError("--sizes must be comma-separated integers") from None
    if not sizes or min(sizes) < 1:
        raise UsageError("--sizes must list positive integers")
    jobs = [(name, n) for name in args.structure for n in sizes]
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        records = list(pool.map(lambda job: bench_one(*job, args.seed, args.queries), jobs))
    text = bench_tsv(records)
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    return 0


# -- ov ----------------------------------------------------------------------

def cmd_ov(args) -> int:
    inst = io.read_ov(args.file)
    A, B = inst.arrays()
    if args.method == "brute":
        pair = find_orthogonal_pair(inst)
    elif args.method == "hcc":
        found, j = decide_ov_hcc(inst)
        pair = (int(np.flatnonzero(A @ B[j] == 0)[0]), j) if found else None
    else:
        found, i = decide_ov_scrc(inst)
        pair = (i, int(np.flatnonzero(B @ A[i] == 0)[0])) if found else None
    print("NONE" if pair is None else f"ORTHOGONAL {pair[0]} {pair[1]}")
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="catalog-range",
                                description="Hierarchical color counting toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    names = sorted(STRUCTURES)

    g = sub.add_parser("gen", help="write a random instance")
    g.add_argument("kind", choices=["tree", "path", "caterpillar", "dag", "ov"])
    g.add_argument("n", type=int, help="vertices (or vectors per side for ov)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="instance")
    g.add_argument("--points", type=int, help="point count (default n)")
    g.add_argument("--queries", type=int, default=100)
    g.add_argument("--scrc", action="store_true", help="add a query vertex to each query")
    g.add_argument("--weighted", action="store_true", help="random vertex weights in 1..16")
    g.add_argument("--legs", type=int)
    g.add_argument("--leg-length", type=int, default=3)
    g.add_argument("--edges-per-vertex", type=float, default=2.0)
    g.add_argument("--dim", type=int, default=8)
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--plant", action="store_true", help="force an orthogonal pair")
    g.set_defaults(func=cmd_gen)

    def instance_args(sp, structure_required=True):
        sp.add_argument("--structure", choices=names, required=structure_required)
        sp.add_argument("--graph")
        sp.add_argument("--points")
        sp.add_argument("--weighted", action="store_true")

    b = sub.add_parser("build", help="build an index and report its size")
    instance_args(b)
    b.add_argument("--out", help="save an hcc-dag index (HDAG1 format)")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="answer queries, one result per line")
    instance_args(q, structure_required=False)
    q.add_argument("--index", help="saved hcc-dag index")
    q.add_argument("--queries", required=True)
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("reduce", help="write a transformed instance")
    r.add_argument("kind", choices=["path-to-distinct-y", "distinct-y-to-path", "crc-to-hcc",
                                    "summax-to-caterpillar", "dominance-to-summax",
                                    "colored3sided-to-dom3d", "ov-to-dag"])
    r.add_argument("--graph")
    r.add_argument("--points")
    r.add_argument("--ov")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="compare a structure with the brute-force oracle")
    instance_args(v, structure_required=False)
    v.add_argument("--index", help="saved hcc-dag index")
    v.add_argument("--queries", type=int, default=2000, help="sample size when n > 64")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    be = sub.add_parser("bench", help="time builds and queries, print TSV")
    be.add_argument("--structure", choices=names, action="append", required=True)
    be.add_argument("--sizes", default="1024,16384")
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--queries", type=int, default=1000)
    be.add_argument("--out")
    be.set_defaults(func=cmd_bench)

    o = sub.add_parser("ov", help="decide an Orthogonal Vectors instance")
    o.add_argument("file")
    o.add_argument("--method", choices=["hcc", "scrc", "brute"], default="hcc")
    o.set_defaults(func=cmd_ov)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "query" and not args.index and not args.structure:
        parser.error("query needs --structure or --index")
    try:
        thread_cap()
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError, IndexError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
