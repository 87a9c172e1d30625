"""Counting engines shared by the higher-level structures."""

from .color3sided import Color3sidedIndex, build_color3sided, build_distinct_y, query_color3sided
from .crc import Crc1dIndex, build_crc1d, prev_links, query_crc1d
from .dominance import (Dominance2Index, Dominance3Index, build_dominance2, build_dominance3,
                        query_dominance2, query_dominance3)
from .rangemax import RangeMaxIndex, build_rangemax, query_rangemax

__all__ = [
    "Color3sidedIndex",
    "Crc1dIndex",
    "Dominance2Index",
    "Dominance3Index",
    "RangeMaxIndex",
    "build_color3sided",
    "build_crc1d",
    "build_distinct_y",
    "build_dominance2",
    "build_dominance3",
    "build_rangemax",
    "prev_links",
    "query_color3sided",
    "query_crc1d",
    "query_dominance2",
    "query_dominance3",
    "query_rangemax",
]
