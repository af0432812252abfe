"""Network decompositions in a simulated LOCAL model, with the coloring
kernels they rely on and a few approximation algorithms built on top."""

from .applications import (
    ApproxResult,
    approx_min_coloring,
    approx_mds,
    approx_t_spanner,
    color_high_girth,
    color_triangle_free,
)
from .coloring import (
    Coloring,
    HPartition,
    UnionFreeFamily,
    arb_linial_color,
    build_union_free,
    is_union_free,
    linial_color,
    random_color,
)
from .decompose import NetworkDecomposition, decompose, dec_small, extract_h_partition, partition, relabel
from .graph import Graph, SuperGraph, build_graph, parse_graph, read_graph, write_graph
from .separated import low_intersecting, rs_decompose, rs_partition, ruling_set, sep_decompose, weak_sep_decompose
from .sim import RoundLedger, SimConfig

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "Coloring",
    "Graph",
    "HPartition",
    "NetworkDecomposition",
    "RoundLedger",
    "SimConfig",
    "SuperGraph",
    "UnionFreeFamily",
    "approx_min_coloring",
    "approx_mds",
    "approx_t_spanner",
    "arb_linial_color",
    "build_graph",
    "build_union_free",
    "color_high_girth",
    "color_triangle_free",
    "dec_small",
    "decompose",
    "extract_h_partition",
    "is_union_free",
    "linial_color",
    "low_intersecting",
    "parse_graph",
    "partition",
    "random_color",
    "read_graph",
    "relabel",
    "rs_decompose",
    "rs_partition",
    "ruling_set",
    "sep_decompose",
    "weak_sep_decompose",
    "write_graph",
]
