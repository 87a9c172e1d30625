"""Plain-text instance formats.

Graph::

    n kind
    u v          # one edge per line, u is a sub-category of v
    # weights
    v w          # optional vertex weights (default 1)

Points: ``x color`` per line.  Queries: ``lo hi`` or ``lo hi v_q``.
OV instances: one 0/1 string per vector, a blank line between ``A`` and ``B``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import CategoryGraph
from .ov import OvInstance

__all__ = [
    "format_graph",
    "format_ov",
    "format_rows",
    "parse_graph",
    "parse_ov",
    "parse_rows",
    "read_graph",
    "read_ov",
    "read_points",
    "read_queries",
    "write_graph",
    "write_ov",
    "write_points",
    "write_rows",
]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield no, line


def parse_graph(text: str) -> CategoryGraph:
    it = _lines(text)
    try:
        _, header = next(it)
    except StopIteration:
        raise ValueError("graph file is empty") from None
    parts = header.split()
    if len(parts) != 2:
        raise ValueError("graph header must be 'n kind'")
    n, kind = int(parts[0]), parts[1]
    edges, weights = [], {}
    section = edges
    for no, line in it:
        if line.startswith("#"):
            if line.lstrip("#").strip().lower() != "weights":
                raise ValueError(f"line {no}: unknown section {line!r}")
            section = weights
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {no}: expected two integers")
        a, b = int(fields[0]), int(fields[1])
        if section is edges:
            edges.append((a, b))
        else:
            weights[a] = b
    w = [weights.get(v, 1) for v in range(n)]
    if any(v < 0 or v >= n for v in weights):
        raise ValueError("weight given for a vertex outside the graph")
    return CategoryGraph(n, tuple(edges), kind=kind, weights=w)


def format_graph(g: CategoryGraph) -> str:
    out = [f"{g.vertex_count} {g.kind}"]
    out += [f"{u} {v}" for u, v in g.edges]
    if any(w != 1 for w in g.weights):
        out.append("# weights")
        out += [f"{v} {w}" for v, w in enumerate(g.weights)]
    return "\n".join(out) + "\n"


def parse_rows(text: str, widths=(2,)) -> np.ndarray:
    """Integer rows whose length is one of ``widths``; rows must agree."""
    rows = []
    for no, line in _lines(text):
        if line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) not in widths:
            raise ValueError(f"line {no}: expected {' or '.join(map(str, widths))} integers")
        rows.append([int(f) for f in fields])
    if not rows:
        return np.empty((0, widths[0]), dtype=np.int64)
    if len({len(r) for r in rows}) != 1:
        raise ValueError("rows differ in length")
    return np.array(rows, dtype=np.int64)


def format_rows(rows) -> str:
    return "".join(" ".join(str(int(v)) for v in r) + "\n" for r in rows)


def parse_ov(text: str) -> OvInstance:
    blocks, cur = [], []
    for raw in text.splitlines() + [""]:
        line = raw.strip()
        if line:
            if set(line) - {"0", "1"}:
                raise ValueError(f"not a 0/1 vector: {line!r}")
            cur.append(tuple(int(c) for c in line))
        elif cur:
            blocks.append(cur)
            cur = []
    if len(blocks) != 2:
        raise ValueError("OV file needs two vector blocks separated by a blank line")
    return OvInstance(tuple(blocks[0]), tuple(blocks[1]))


def format_ov(inst: OvInstance) -> str:
    def block(vs):
        return "".join("".join(map(str, v)) + "\n" for v in vs)
    return block(inst.A) + "\n" + block(inst.B)


def read_graph(path) -> CategoryGraph:
    return parse_graph(Path(path).read_text())


def write_graph(path, g: CategoryGraph) -> None:
    Path(path).write_text(format_graph(g))


def read_points(path) -> tuple[np.ndarray, np.ndarray]:
    rows = parse_rows(Path(path).read_text(), (2,))
    return rows[:, 0], rows[:, 1]


def write_points(path, xs, colors) -> None:
    Path(path).write_text(format_rows(zip(xs, colors)))


def read_queries(path) -> np.ndarray:
    return parse_rows(Path(path).read_text(), (2, 3))


def write_rows(path, rows) -> None:
    Path(path).write_text(format_rows(rows))


def read_ov(path) -> OvInstance:
    return parse_ov(Path(path).read_text())


def write_ov(path, inst: OvInstance) -> None:
    Path(path).write_text(format_ov(inst))
