"""Plain colored range counting as the difference of two tree-HCC answers.

Colors become the leaves of a balanced binary tree.  Collapsing every pair
of sibling leaves into their parent yields a second tree in which each
point's color moves one level up.  The ancestor unions of the two trees
differ exactly by the leaves, so HCC on the first minus HCC on the second
counts distinct colors.
"""

from __future__ import annotations

import numpy as np

from ..core import tree_from_parents
from ..hcc_tree import HccTreeIndex

__all__ = ["CrcViaHcc", "crc_to_hcc"]


class CrcViaHcc:
    """Distinct colors in ``[lo, hi]`` from two HCC-tree indexes.

    Attributes
    ----------
    leaves : int
        Padded color count, a power of two ``>= 2``.
    full, collapsed : HccTreeIndex
    full_colors, collapsed_colors : ndarray
        Vertex each input point is colored with in the two trees.
    """

    def __init__(self, xs, colors):
        xs = np.asarray(xs, dtype=np.int64)
        colors = np.asarray(colors)
        labels, leaf_of = np.unique(colors, return_inverse=True)
        self.labels = labels
        k = 2
        while k < len(labels):
            k *= 2
        self.leaves = k
        # heap layout: vertex i has children 2i+1 and 2i+2; leaves are k-1 .. 2k-2
        full_parent = [-1] + [(i - 1) // 2 for i in range(1, 2 * k - 1)]
        collapsed_parent = full_parent[: k - 1]
        full = tree_from_parents(full_parent)
        collapsed = tree_from_parents(collapsed_parent, kind="path" if k == 2 else "tree")
        self.xs = xs
        self.full_colors = leaf_of.ravel().astype(np.int64) + k - 1
        self.collapsed_colors = (self.full_colors - 1) // 2
        self.full = HccTreeIndex(full).fit(xs, self.full_colors)
        self.collapsed = HccTreeIndex(collapsed).fit(xs, self.collapsed_colors)

    def predict(self, Q) -> np.ndarray:
        return self.full.predict(Q) - self.collapsed.predict(Q)

    def query(self, lo: int, hi: int) -> int:
        return self.full.query(lo, hi) - self.collapsed.query(lo, hi)


def crc_to_hcc(xs, colors) -> CrcViaHcc:
    return CrcViaHcc(xs, colors)
