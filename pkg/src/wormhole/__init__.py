"""Sublinear approximate shortest paths through a small high-degree core."""

__version__ = "0.1.0"

from .access import AccessSession
from .baseline import bfs_distance, bfs_distances, bibfs
from .bench import BenchReport, InquiryRecord, breakeven, export_csv, relative_error, run_bench
from .chunglu import ChungLuParams, expected_weights, generate
from .coregen import (
    CoreDecomposition,
    core_gen,
    decomposition_nbytes,
    default_fraction,
    load_decomposition,
    save_decomposition,
)
from .errors import (
    Disconnected,
    ExhaustedComponent,
    FormatError,
    MismatchError,
    ParseError,
    RoutingError,
    WormholeError,
)
from .graph import Graph, ingest_edge_list, load_csr, save_csr, write_edge_list
from .oracle import (
    BiBFSOracle,
    CoreLabelIndex,
    LabelIndexOracle,
    build_core_index,
    load_index,
    save_index,
)
from .router import PathResult, distance_only, is_valid_path, route, stitch

__all__ = [
    "AccessSession", "BenchReport", "BiBFSOracle", "ChungLuParams", "CoreDecomposition",
    "CoreLabelIndex", "Disconnected", "ExhaustedComponent", "FormatError", "Graph",
    "InquiryRecord", "LabelIndexOracle", "MismatchError", "ParseError", "PathResult",
    "RoutingError", "WormholeError", "bfs_distance", "bfs_distances", "bibfs", "breakeven",
    "build_core_index", "core_gen", "decomposition_nbytes", "default_fraction",
    "distance_only", "expected_weights", "export_csv", "generate", "ingest_edge_list",
    "is_valid_path", "load_csr", "load_decomposition", "load_index", "relative_error",
    "route", "run_bench", "save_csr", "save_decomposition", "save_index", "stitch",
    "write_edge_list",
]
