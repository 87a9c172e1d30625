"""HCC on arbitrary category DAGs, plus the per-vertex SCRC baseline.

Short intervals (at most ``B = ceil(sqrt(n))`` points) are answered from an
explicit table.  Long intervals use a compressed *flat* point set: each point
is conceptually copied once per super-category of its color, and inside every
block of ``ceil(B/2)`` consecutive ranks only the first and last copy of each
super-category survive.  A long interval always contains an endpoint of any
block it overlaps with a surviving copy, so 1D color counting over the
compressed copies is exact for long intervals (and only for those).
"""

from __future__ import annotations

import math
import struct
from collections import defaultdict
from pathlib import Path

import numpy as np

from .base import BaseEstimator, IntervalCounterMixin, SubCategoryCounterMixin
from .core import CategoryGraph, CoordinateMap, RankedPointSet, ancestor_rows, bits_of
from .engines.crc import Crc1dIndex

__all__ = [
    "HccDagIndex",
    "ScrcDagIndex",
    "build_hcc_dag",
    "build_scrc_dag_trivial",
    "load_hcc_dag",
    "query_hcc_dag",
    "transitive_closure",
]

MAGIC = b"HDAG1"


def transitive_closure(g: CategoryGraph) -> list[int]:
    """Packed ancestor rows; bit ``u`` of ``rows[v]`` set iff ``u`` is reachable from ``v``."""
    return ancestor_rows(g)


class HccDagIndex(IntervalCounterMixin, BaseEstimator):
    """HCC on a category DAG with a short-query table and a compressed flat set.

    Parameters
    ----------
    graph : CategoryGraph
    weighted : bool, default False

    Attributes
    ----------
    threshold_ : int
        ``B``; intervals of at most this many points use the table.
    block_size_ : int
    table_ : ndarray of shape (n, B)
        ``table_[i, l]`` answers rank interval ``[i+1, i+l+1]``.
    compressed_ : tuple of ndarray
        ``(positions, vertices)`` of the surviving flat copies.
    """

    def __init__(self, graph: CategoryGraph, weighted: bool = False):
        self.graph = graph
        self.weighted = weighted

    def _fit_ranked(self, points: RankedPointSet):
        g = self.graph
        nv = g.vertex_count
        rows = transitive_closure(g)
        vweights = np.asarray(g.weights, dtype=np.int64)
        colors = points.colors.tolist()
        n = points.n
        B = math.isqrt(n - 1) + 1 if n else 0
        block = (B + 1) // 2

        table = np.zeros((n, B), dtype=np.int64)
        for i in range(n):
            acc = 0
            total = 0
            for ell in range(min(B, n - i)):
                new = rows[colors[i + ell]] & ~acc
                if new:
                    acc |= new
                    if self.weighted:
                        total += int(vweights[bits_of(new, nv)].sum())
                    else:
                        total += new.bit_count()
                table[i, ell] = total

        pos, verts = [], []
        for start in range(0, n, max(block, 1)):
            stop = min(start + block, n)
            for span in (range(start, stop), range(stop - 1, start - 1, -1)):
                seen = 0
                for i in span:
                    new = rows[colors[i]] & ~seen
                    if new:
                        seen |= new
                        vs = bits_of(new, nv)
                        pos.append(np.full(vs.size, i + 1, dtype=np.int64))
                        verts.append(vs)

        self._set_state(points, B, table,
                        np.concatenate(pos) if pos else np.empty(0, np.int64),
                        np.concatenate(verts) if verts else np.empty(0, np.int64),
                        vweights)
        self.flat_size_ = sum(rows[c].bit_count() for c in colors)
        return self

    def _set_state(self, points, B, table, cpos, cvert, vweights):
        self.points_ = points
        self.threshold_ = B
        self.block_size_ = (B + 1) // 2
        self.table_ = table
        self.vertex_weights_ = vweights
        crc = Crc1dIndex.from_positions(cpos, cvert, vweights if self.weighted else None)
        pos, vert, _ = crc.prev_
        self.compressed_ = (pos, vert)
        self.crc_ = crc

    @property
    def n_compressed_(self) -> int:
        return len(self.compressed_[0])

    @property
    def n_blocks_(self) -> int:
        n = self.points_.n
        return -(-n // self.block_size_) if n else 0

    def query_compressed(self, a, b) -> np.ndarray:
        """Answer rank intervals from the compressed set alone (exact only when
        the interval holds more than ``threshold_`` points)."""
        return self.crc_.count_positions(a, b)

    def _count_ranks(self, a, b):
        length = b - a + 1
        short = length <= self.threshold_
        out = np.empty(a.shape, dtype=np.int64)
        if short.any():
            out[short] = self.table_[a[short] - 1, length[short] - 1]
        if (~short).any():
            out[~short] = self.crc_.count_positions(a[~short], b[~short])
        return out

    # -- persistence -------------------------------------------------------

    def save(self, path) -> None:
        """Write the index as an ``HDAG1`` file (little-endian, 64-bit lengths)."""
        g = self.graph
        n = self.points_.n
        edges = np.asarray(g.edges, dtype="<i8").reshape(-1)
        header = struct.pack("<5Q", n, g.vertex_count, self.threshold_, int(self.weighted),
                             self.n_compressed_)
        arrays = [self.points_.coords, self.points_.colors, edges, self.vertex_weights_,
                  self.table_.reshape(-1), self.compressed_[0], self.compressed_[1]]
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(header)
            for arr in arrays:
                a = np.ascontiguousarray(arr, dtype="<i8")
                fh.write(struct.pack("<Q", a.size))
                fh.write(a.tobytes())

    @classmethod
    def load(cls, path) -> "HccDagIndex":
        data = Path(path).read_bytes()
        if data[:5] != MAGIC:
            raise ValueError(f"{path}: not an HDAG1 index file")
        try:
            n, nv, B, weighted, m = struct.unpack_from("<5Q", data, 5)
            off = 45
            arrays = []
            for _ in range(7):
                (size,) = struct.unpack_from("<Q", data, off)
                off += 8
                arrays.append(np.frombuffer(data, dtype="<i8", count=size,
                                            offset=off).astype(np.int64))
                off += 8 * size
        except (struct.error, ValueError) as exc:
            raise ValueError(f"{path}: truncated HDAG1 file") from exc
        if off != len(data):
            raise ValueError(f"{path}: trailing bytes after HDAG1 payload")
        if (len(arrays[0]) != n or len(arrays[1]) != n or len(arrays[3]) != nv
                or len(arrays[4]) != n * B or len(arrays[5]) != m or len(arrays[6]) != m):
            raise ValueError(f"{path}: inconsistent HDAG1 array lengths")
        coords, colors, edges, vweights, table, cpos, cvert = arrays
        g = CategoryGraph(nv, tuple(map(tuple, edges.reshape(-1, 2).tolist())),
                          kind="dag", weights=vweights.tolist())
        idx = cls(g, bool(weighted))
        ranks = np.arange(1, n + 1, dtype=np.int64)
        points = RankedPointSet(colors, CoordinateMap(coords), ranks)
        idx._set_state(points, B, table.reshape(n, B), cpos, cvert, vweights)
        return idx


def build_hcc_dag(pts: RankedPointSet, g: CategoryGraph, weighted: bool = False) -> HccDagIndex:
    return HccDagIndex(g, weighted)._fit_ranked(pts)


def query_hcc_dag(idx: HccDagIndex, q) -> int:
    return idx.query(*q)


def load_hcc_dag(path) -> HccDagIndex:
    return HccDagIndex.load(path)


class ScrcDagIndex(SubCategoryCounterMixin, BaseEstimator):
    """SCRC on a DAG: one 1D color counter per vertex over the points whose
    color is one of its sub-categories (quadratic space)."""

    def __init__(self, graph: CategoryGraph):
        self.graph = graph

    def _fit_ranked(self, points: RankedPointSet):
        g = self.graph
        rows = transitive_closure(g)
        buckets = defaultdict(list)
        for r, c in enumerate(points.colors.tolist(), start=1):
            for v in bits_of(rows[c], g.vertex_count).tolist():
                buckets[v].append((r, c))
        self.points_ = points
        self.structures_ = {}
        for v, items in buckets.items():
            arr = np.asarray(items, dtype=np.int64)
            self.structures_[v] = Crc1dIndex.from_positions(arr[:, 0], arr[:, 1])
        return self

    @property
    def n_stored_(self) -> int:
        return sum(s.n_stored_ for s in self.structures_.values())

    def _count_ranks(self, a, b, v):
        out = np.zeros(a.shape, dtype=np.int64)
        for u in np.unique(v):
            s = self.structures_.get(int(u))
            if s is not None:
                m = v == u
                out[m] = s.count_positions(a[m], b[m])
        return out


def build_scrc_dag_trivial(pts: RankedPointSet, g: CategoryGraph) -> ScrcDagIndex:
    return ScrcDagIndex(g)._fit_ranked(pts)
