"""Synthetic network generation that preserves per-cluster edge connectivity.

Given a network and a (possibly partial) clustering, the generator rebuilds
the clustered and outlier subnetworks from exact block-model parameters,
guarantees each synthetic cluster at least its empirical edge connectivity
via per-cluster spanning subgraphs, and finishes with a degree-correction
pass. A statistics layer compares empirical and synthetic pairs.
"""

from .errors import (
    DuplicateEdgeError,
    EcsbmError,
    EmptyGraphError,
    GraphTooLargeError,
    InconsistentParamsError,
    KTooLargeError,
    NotEnoughCandidatesError,
    OddDiagonalError,
    ParseError,
    SelfLoopError,
    UnassignedVertexError,
    UniverseMismatchError,
    VertexOutOfRangeError,
    VertexUniverseMismatchError,
)
from .graph import (
    Clustering,
    Graph,
    MultiGraph,
    build_graph,
    connected_components,
    graph_union,
    induced_subgraph,
    simplify,
)
from .io import load_clustering, load_network, write_clustering, write_network
from .kecssn import KecssnConfig, ParamBudget, gen_kecssn, select_neighbors
from .mincut import CutResult, brute_force_mincut, edge_connectivity
from .params import (
    ConnectivityTargets,
    SbmParams,
    augment_with_singletons,
    extract_connectivity_targets,
    extract_sbm_params,
    outlier_aux_params,
    split_subnetworks,
)
from .pipeline import (
    DEFAULT_SEED,
    PipelineConfig,
    SyntheticResult,
    diagnose_plain_sbm,
    generate_ecsbm,
    generate_plain_sbm,
    stage1_clustered,
    stage2_outliers,
    stage3_degree_correction,
)
from .sampler import SbmDiagnostics, diagnose_sbm_artifacts, sample_sbm
from .stats import (
    STAT_NAMES,
    DistanceReport,
    StatReport,
    char_time,
    cluster_stats,
    compute_stat_report,
    distances,
    global_ccoeff,
    mixing_mus,
    outlier_degrees,
    pseudo_diameter,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "MultiGraph",
    "Clustering",
    "build_graph",
    "induced_subgraph",
    "simplify",
    "graph_union",
    "connected_components",
    "load_network",
    "load_clustering",
    "write_network",
    "write_clustering",
    "CutResult",
    "edge_connectivity",
    "brute_force_mincut",
    "SbmParams",
    "ConnectivityTargets",
    "split_subnetworks",
    "extract_sbm_params",
    "extract_connectivity_targets",
    "outlier_aux_params",
    "augment_with_singletons",
    "KecssnConfig",
    "ParamBudget",
    "gen_kecssn",
    "select_neighbors",
    "sample_sbm",
    "SbmDiagnostics",
    "diagnose_sbm_artifacts",
    "DEFAULT_SEED",
    "PipelineConfig",
    "SyntheticResult",
    "stage1_clustered",
    "stage2_outliers",
    "stage3_degree_correction",
    "generate_ecsbm",
    "generate_plain_sbm",
    "diagnose_plain_sbm",
    "STAT_NAMES",
    "StatReport",
    "DistanceReport",
    "pseudo_diameter",
    "char_time",
    "global_ccoeff",
    "mixing_mus",
    "cluster_stats",
    "outlier_degrees",
    "compute_stat_report",
    "distances",
    "EcsbmError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "VertexOutOfRangeError",
    "VertexUniverseMismatchError",
    "GraphTooLargeError",
    "KTooLargeError",
    "NotEnoughCandidatesError",
    "UnassignedVertexError",
    "InconsistentParamsError",
    "OddDiagonalError",
    "EmptyGraphError",
    "UniverseMismatchError",
    "ParseError",
]
