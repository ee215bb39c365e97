"""Block-model parameter extraction from a clustered network.

The sampler input is the triple (block vector ``b``, degree vector ``d``,
block edge-count matrix ``e``) plus, for the connectivity-preserving
pipeline, a per-cluster edge-connectivity target vector. ``e`` is stored
sparse because treating every outlier as its own singleton block makes the
block count comparable to the vertex count.

Conventions: ``e`` is symmetric, ``e[r, s]`` for ``r != s`` counts edges
between blocks r and s, and ``e[l, l]`` is twice the number of edges inside
block l, so each row sum equals the block's degree sum.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import (
    InconsistentParamsError,
    OddDiagonalError,
    UnassignedVertexError,
)
from .graph import Clustering, Graph, _graph_from_canonical, induced_subgraph
from .mincut import edge_connectivity

__all__ = [
    "SbmParams",
    "ConnectivityTargets",
    "split_subnetworks",
    "extract_sbm_params",
    "extract_connectivity_targets",
    "outlier_aux_params",
    "augment_with_singletons",
]


def _as_sparse_counts(e) -> sp.csr_matrix:
    if sp.issparse(e):
        mat = e.tocsr().astype(np.int64)
    else:
        arr = np.asarray(e, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InconsistentParamsError("edge count matrix must be square")
        mat = sp.csr_matrix(arr)
    mat.eliminate_zeros()
    mat.sum_duplicates()
    return mat


@dataclass(eq=False)
class SbmParams:
    """Degree-corrected block-model parameters with exact count semantics."""

    b: np.ndarray
    d: np.ndarray
    e: sp.csr_matrix

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=np.int64)
        self.d = np.asarray(self.d, dtype=np.int64)
        self.e = _as_sparse_counts(self.e)
        if self.b.shape != self.d.shape:
            raise InconsistentParamsError("b and d must have the same length")

    @property
    def n_vertices(self) -> int:
        return self.b.shape[0]

    @property
    def n_blocks(self) -> int:
        return self.e.shape[0]

    @property
    def total_edges(self) -> int:
        """Edges the parameters demand: off-diagonal counts plus half of each
        diagonal entry, which equals ``sum(d) / 2`` for consistent params."""
        return int(self.e.sum()) // 2

    def block_degree_sums(self) -> np.ndarray:
        return np.bincount(self.b, weights=self.d, minlength=self.n_blocks).astype(
            np.int64
        )

    def validate(self) -> None:
        """Raise unless symmetry, even diagonal, non-negativity, and
        row-consistency (row sums equal block degree sums) all hold."""
        if self.b.size and (self.b.min() < 0 or self.b.max() >= self.n_blocks):
            raise InconsistentParamsError("block id outside [0, n_blocks)")
        if self.d.size and self.d.min() < 0:
            raise InconsistentParamsError("negative target degree")
        if self.e.nnz and self.e.data.min() < 0:
            raise InconsistentParamsError("negative edge count")
        if (self.e != self.e.T).nnz:
            raise InconsistentParamsError("edge count matrix is not symmetric")
        diag = self.e.diagonal()
        if np.any(diag % 2):
            raise OddDiagonalError("odd diagonal entry in edge count matrix")
        row_sums = np.asarray(self.e.sum(axis=1)).ravel().astype(np.int64)
        if not np.array_equal(row_sums, self.block_degree_sums()):
            raise InconsistentParamsError(
                "row sums of e do not match block degree sums"
            )


@dataclass
class ConnectivityTargets:
    """Desired edge connectivity per cluster (0 for singletons and for
    clusters whose induced subgraph is disconnected)."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.int64)

    def __getitem__(self, i: int) -> int:
        return int(self.values[i])

    def __len__(self) -> int:
        return self.values.shape[0]


def split_subnetworks(g: Graph, c: Clustering) -> tuple[Graph, Graph]:
    """Split a network into its clustered and outlier subnetworks.

    Both outputs keep ``g``'s vertex universe. The clustered subnetwork keeps
    edges whose endpoints are both assigned; the outlier subnetwork keeps
    edges with at least one outlier endpoint. Together they partition E(g).
    """
    if c.n_vertices != g.n_vertices:
        raise UnassignedVertexError(
            "clustering universe does not match the graph"
        )
    assigned = c.assignment >= 0
    e = g.edge_array()
    both = assigned[e[:, 0]] & assigned[e[:, 1]] if e.size else np.zeros(0, bool)
    clustered = _graph_from_canonical(g.n_vertices, e[both])
    outlier = _graph_from_canonical(g.n_vertices, e[~both])
    return clustered, outlier


def extract_sbm_params(g: Graph, c: Clustering) -> SbmParams:
    """Block-model parameters of a graph under a total cluster assignment."""
    if c.n_vertices != g.n_vertices:
        raise UnassignedVertexError("clustering universe does not match the graph")
    if not c.is_total():
        v = int(c.outliers()[0])
        raise UnassignedVertexError(f"vertex {v} has no cluster")
    m = c.n_clusters
    e = g.edge_array()
    r = c.assignment[e[:, 0]]
    s = c.assignment[e[:, 1]]
    # Each edge contributes (r,s) and (s,r); internal edges land on the
    # diagonal twice, which is exactly the doubling convention.
    mat = sp.coo_matrix(
        (
            np.ones(2 * e.shape[0], dtype=np.int64),
            (np.concatenate((r, s)), np.concatenate((s, r))),
        ),
        shape=(m, m),
    ).tocsr()
    return SbmParams(b=c.assignment.copy(), d=g.degrees(), e=mat)


def extract_connectivity_targets(
    clustered: Graph, c: Clustering, threads: int = 1
) -> ConnectivityTargets:
    """Edge connectivity of every cluster's induced subgraph."""

    def one(l: int) -> int:
        members = c.members(l)
        if members.shape[0] <= 1:
            return 0
        sub, _ = induced_subgraph(clustered, members)
        return edge_connectivity(sub).cut_size

    if threads > 1 and c.n_clusters > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, range(c.n_clusters)))
    else:
        values = [one(l) for l in range(c.n_clusters)]
    return ConnectivityTargets(np.array(values, dtype=np.int64))


def augment_with_singletons(c: Clustering) -> Clustering:
    """Total clustering that adds one singleton cluster per outlier.

    Singleton blocks are appended after the real clusters in ascending
    vertex-id order, so block ids are deterministic.
    """
    assignment = c.assignment.copy()
    out = c.outliers()
    assignment[out] = c.n_clusters + np.arange(out.shape[0], dtype=np.int64)
    return Clustering(assignment)


def outlier_aux_params(outlier: Graph, c: Clustering) -> SbmParams:
    """Parameters of the outlier subnetwork under the singleton-augmented
    clustering. Non-outlier vertices keep their block but their degree counts
    only outlier-incident edges."""
    return extract_sbm_params(outlier, augment_with_singletons(c))
