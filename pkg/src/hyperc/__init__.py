"""Eigenvector centralities for uniform hypergraphs.

Three centralities are offered: the clique-motif centrality (``cec``),
the Z-eigenvector centrality (``zec``) and the H-eigenvector centrality
(``hec``). Hypergraphs are kept as edge lists; the adjacency tensor is
implicit.
"""

__version__ = "0.1.0"

from .analysis import RankComparison, spearman, top_table, topk_correlation
from .cec import CentralityResult, cec, normalize_one_norm, path_counts
from .hec import hec
from .hypergraph import (
    ConvergenceError,
    HypergraphError,
    NodeLabelMap,
    NotConnectedError,
    UniformHypergraph,
    is_connected,
    largest_component,
    read_edgelist,
    validate,
    write_edgelist,
)
from .models import example_unstable_fixture, sunflower, sunflower_ratio, sunflower_zec_family
from .tensor import apply, contracted_matrix, motif_matrix
from .zec import ZecEnsemble, ZecOptions, ZEigenpair, classify_stability, sshopm, zec, zec_single

__all__ = [
    "CentralityResult",
    "ConvergenceError",
    "HypergraphError",
    "NodeLabelMap",
    "NotConnectedError",
    "RankComparison",
    "UniformHypergraph",
    "ZEigenpair",
    "ZecEnsemble",
    "ZecOptions",
    "apply",
    "cec",
    "classify_stability",
    "contracted_matrix",
    "example_unstable_fixture",
    "hec",
    "is_connected",
    "largest_component",
    "motif_matrix",
    "normalize_one_norm",
    "path_counts",
    "read_edgelist",
    "spearman",
    "sshopm",
    "sunflower",
    "sunflower_ratio",
    "sunflower_zec_family",
    "top_table",
    "topk_correlation",
    "validate",
    "write_edgelist",
    "zec",
    "zec_single",
]
