"""Additive spanners for edge-weighted undirected graphs.

Builders live in :mod:`wspanner.spanners`, exact certification in
:mod:`wspanner.verify`; the command line front end is ``wspanner``.
"""
__version__ = "0.1.0"

from .graph import EdgeSet, Graph, GraphFormatError, WorkingGraph, generate_gnp, load_graph, parse_graph, save_graph
from .light_init import SpannerBuild, d_light_init
from .paths import ReweightConfig, mecsp, weak_csssp
from .sampling import SampleConfig, sample_vertices
from .shortest_paths import apsp, bottleneck_dijkstra, dijkstra
from .spanners import (
    ALGORITHMS,
    BuildParams,
    BuildReport,
    build,
    build_2w_subsetwise,
    build_4w_fast,
    build_6eps_wmax,
    build_6w,
    build_6w_fast,
    build_6wmax_fast,
)
from .verify import Bound, StretchReport, verify_sampling_lemmas, verify_size, verify_stretch

__all__ = [
    "ALGORITHMS", "Bound", "BuildParams", "BuildReport", "EdgeSet", "Graph", "GraphFormatError",
    "ReweightConfig", "SampleConfig", "SpannerBuild", "StretchReport", "WorkingGraph", "apsp",
    "bottleneck_dijkstra", "build", "build_2w_subsetwise", "build_4w_fast", "build_6eps_wmax",
    "build_6w", "build_6w_fast", "build_6wmax_fast", "d_light_init", "dijkstra", "generate_gnp",
    "load_graph", "mecsp", "parse_graph", "sample_vertices", "save_graph", "verify_sampling_lemmas",
    "verify_size", "verify_stretch", "weak_csssp",
]
