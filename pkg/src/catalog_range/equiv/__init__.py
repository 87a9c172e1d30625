"""Executable reductions between the counting problems, each checkable against an oracle."""

from .crc import CrcViaHcc, crc_to_hcc
from .grid import GridIndex, build_grid, query_grid
from .summax import (CaterpillarDominance, CaterpillarInstance, DominanceAsSumMax, P3ToP1,
                     dominance_to_summax, p3_to_p1, summax_to_caterpillar)
from .threesided import (Dom3dViaDistinctY, colored3sided_to_dom3dcolor, distinctY_to_scrc_path,
                         dom3d_via_distinctY, scrc_path_to_distinctY)
from .weights import WeightSplit, split_weight, split_weights

__all__ = [
    "CaterpillarDominance",
    "CaterpillarInstance",
    "CrcViaHcc",
    "Dom3dViaDistinctY",
    "DominanceAsSumMax",
    "GridIndex",
    "P3ToP1",
    "WeightSplit",
    "build_grid",
    "colored3sided_to_dom3dcolor",
    "crc_to_hcc",
    "distinctY_to_scrc_path",
    "dom3d_via_distinctY",
    "dominance_to_summax",
    "p3_to_p1",
    "query_grid",
    "scrc_path_to_distinctY",
    "split_weight",
    "split_weights",
    "summax_to_caterpillar",
]
