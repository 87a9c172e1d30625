"""Colored range counting over category hierarchies.

Points on a line carry categories from a DAG of sub-category relations.
The estimators here count, for a query interval, every category reachable
upward from the colors present (HCC) or the present colors lying below a
query category (SCRC).
"""

from .core import (CategoryGraph, CoordinateMap, GraphError, IntervalQuery, Point3D,
                   RankedPointSet, SumMaxInstance, WeightedPoint2D, path_graph, rank_space_reduce,
                   reachable_down, reachable_up, tree_from_parents)
from .engines import (Color3sidedIndex, Crc1dIndex, Dominance2Index, Dominance3Index,
                      RangeMaxIndex)
from .hcc_dag import HccDagIndex, ScrcDagIndex, build_hcc_dag, build_scrc_dag_trivial, query_hcc_dag
from .hcc_tree import HccPathIndex, HccTreeIndex, build_hcc_tree, query_hcc_tree
from .heavypath import HeavyPathDecomposition, decompose
from .ov import OvInstance, brute_ov, build_ov_dag, decide_ov_hcc, decide_ov_scrc
from .scrc_tree import ScrcTreeIndex, build_scrc_tree, query_scrc_tree

__version__ = "0.1.0"

__all__ = [
    "CategoryGraph",
    "Color3sidedIndex",
    "CoordinateMap",
    "Crc1dIndex",
    "Dominance2Index",
    "Dominance3Index",
    "GraphError",
    "HccDagIndex",
    "HccPathIndex",
    "HccTreeIndex",
    "HeavyPathDecomposition",
    "IntervalQuery",
    "OvInstance",
    "Point3D",
    "RangeMaxIndex",
    "RankedPointSet",
    "ScrcDagIndex",
    "ScrcTreeIndex",
    "SumMaxInstance",
    "WeightedPoint2D",
    "brute_ov",
    "build_hcc_dag",
    "build_hcc_tree",
    "build_ov_dag",
    "build_scrc_dag_trivial",
    "build_scrc_tree",
    "decide_ov_hcc",
    "decide_ov_scrc",
    "decompose",
    "path_graph",
    "query_hcc_dag",
    "query_hcc_tree",
    "query_scrc_tree",
    "rank_space_reduce",
    "reachable_down",
    "reachable_up",
    "tree_from_parents",
]
