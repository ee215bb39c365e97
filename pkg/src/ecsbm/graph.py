"""Core graph data model: simple graphs, multigraphs, and clusterings.

Vertices are dense integer ids in ``[0, n)``. Simple graphs are stored twice,
as a canonical edge array (rows ``u < v``, lexicographically sorted) and as a
CSR-style adjacency (``indptr`` / ``indices`` with sorted neighbor lists), so
that both edge-wise and neighborhood-wise algorithms run on flat numpy arrays.
All structures are frozen after construction and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import (
    DuplicateEdgeError,
    SelfLoopError,
    VertexOutOfRangeError,
    VertexUniverseMismatchError,
)

__all__ = [
    "Graph",
    "MultiGraph",
    "Clustering",
    "build_graph",
    "induced_subgraph",
    "simplify",
    "graph_union",
    "connected_components",
]


def _as_edge_array(edges) -> np.ndarray:
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be an (m, 2) array of vertex pairs")
    return arr


def _canonical_edges(edges: np.ndarray) -> np.ndarray:
    """Sort each pair to u < v, then sort rows lexicographically."""
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    order = np.lexsort((hi, lo))
    return np.column_stack((lo[order], hi[order]))


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(eq=False)
class Graph:
    """Immutable simple undirected graph on vertices ``[0, n_vertices)``.

    ``edges`` holds one row per edge with ``u < v``; ``indptr``/``indices``
    are the usual CSR adjacency with each neighbor list sorted ascending.
    """

    n_vertices: int
    edges: np.ndarray
    indptr: np.ndarray = field(repr=False)
    indices: np.ndarray = field(repr=False)

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (a read-only view)."""
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < row.shape[0] and row[i] == v

    def edge_array(self) -> np.ndarray:
        """Canonical (m, 2) edge array, rows ``u < v``, lexicographically sorted."""
        return self.edges

    def adjacency_csr(self, dtype=np.float64) -> sp.csr_matrix:
        """The adjacency matrix as ``scipy.sparse.csr_matrix``."""
        data = np.ones(self.indices.shape[0], dtype=dtype)
        return sp.csr_matrix(
            (data, self.indices, self.indptr),
            shape=(self.n_vertices, self.n_vertices),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n_vertices == other.n_vertices and np.array_equal(
            self.edges, other.edges
        )

    def __repr__(self) -> str:
        return f"Graph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


@dataclass(eq=False)
class MultiGraph:
    """Undirected multigraph: an explicit edge list that may repeat pairs
    and contain self-loops. A self-loop at ``v`` adds two to ``v``'s degree."""

    n_vertices: int
    edges: np.ndarray

    def __post_init__(self):
        self.edges = _freeze(_as_edge_array(self.edges).copy())
        if self.edges.size and (
            self.edges.min() < 0 or self.edges.max() >= self.n_vertices
        ):
            raise VertexOutOfRangeError(
                f"edge endpoint outside [0, {self.n_vertices})"
            )

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    def degrees(self) -> np.ndarray:
        """Stub degrees: each self-loop contributes 2 to its endpoint."""
        return np.bincount(
            self.edges.ravel(), minlength=self.n_vertices
        ).astype(np.int64)

    def __repr__(self) -> str:
        return f"MultiGraph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


class Clustering:
    """Partial assignment of vertices to clusters ``[0, m)``.

    Vertices with assignment ``-1`` are outliers. Every cluster id in
    ``[0, m)`` must be non-empty; clusters partition the non-outlier vertices.
    """

    def __init__(self, assignment) -> None:
        assignment = np.asarray(assignment, dtype=np.int64)
        if assignment.ndim != 1:
            raise ValueError("assignment must be a 1-d array")
        if assignment.size and assignment.min() < -1:
            raise ValueError("cluster ids must be >= 0 (or -1 for outliers)")
        self.assignment = _freeze(assignment.copy())
        self.n_vertices = assignment.shape[0]
        assigned = assignment[assignment >= 0]
        self.m = int(assigned.max()) + 1 if assigned.size else 0
        sizes = np.bincount(assigned, minlength=self.m)
        if np.any(sizes == 0):
            empty = int(np.flatnonzero(sizes == 0)[0])
            raise ValueError(f"cluster {empty} is empty")
        # Member lists, grouped once: stable argsort keeps ids ascending.
        order = np.argsort(assignment, kind="stable")
        order = order[assignment[order] >= 0]
        bounds = np.concatenate(([0], np.cumsum(sizes)))
        self._members = [
            _freeze(order[bounds[l] : bounds[l + 1]].copy()) for l in range(self.m)
        ]

    @classmethod
    def from_clusters(cls, n_vertices: int, clusters) -> "Clustering":
        """Build from an iterable of vertex collections, one per cluster."""
        assignment = np.full(n_vertices, -1, dtype=np.int64)
        for cid, members in enumerate(clusters):
            members = np.asarray(list(members), dtype=np.int64)
            if np.any(assignment[members] >= 0):
                raise ValueError("a vertex appears in more than one cluster")
            assignment[members] = cid
        return cls(assignment)

    @property
    def n_clusters(self) -> int:
        return self.m

    def members(self, cluster_id: int) -> np.ndarray:
        """Vertex ids of one cluster, ascending."""
        return self._members[cluster_id]

    def cluster_sizes(self) -> np.ndarray:
        return np.array([m.shape[0] for m in self._members], dtype=np.int64)

    def outliers(self) -> np.ndarray:
        """Vertex ids with no cluster, ascending."""
        return np.flatnonzero(self.assignment < 0)

    def is_total(self) -> bool:
        return not np.any(self.assignment < 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self.assignment, other.assignment)

    def __repr__(self) -> str:
        return (
            f"Clustering(n_vertices={self.n_vertices}, n_clusters={self.m}, "
            f"n_outliers={self.outliers().shape[0]})"
        )


def _graph_from_canonical(n: int, edges: np.ndarray) -> Graph:
    """Assemble a Graph from a validated canonical edge array."""
    m = edges.shape[0]
    endpoints = np.concatenate((edges[:, 0], edges[:, 1]))
    others = np.concatenate((edges[:, 1], edges[:, 0]))
    deg = np.bincount(endpoints, minlength=n).astype(np.int64)
    indptr = np.concatenate(([0], np.cumsum(deg)))
    order = np.lexsort((others, endpoints))
    indices = others[order]
    return Graph(
        n_vertices=n,
        edges=_freeze(edges),
        indptr=_freeze(indptr),
        indices=_freeze(indices),
    )


def build_graph(edge_pairs, n_vertices: int | None = None) -> Graph:
    """Build a simple undirected graph from unordered vertex pairs.

    Self-loops and duplicate pairs (in either orientation) are rejected.
    ``n_vertices`` declares the universe; it defaults to ``max id + 1`` and
    may exceed it to allow isolated vertices.
    """
    edges = _as_edge_array(edge_pairs)
    if edges.size and edges.min() < 0:
        raise VertexOutOfRangeError("vertex ids must be non-negative")
    if n_vertices is None:
        n_vertices = int(edges.max()) + 1 if edges.size else 0
    elif edges.size and edges.max() >= n_vertices:
        raise VertexOutOfRangeError(
            f"vertex id {int(edges.max())} >= declared n_vertices {n_vertices}"
        )
    loops = edges[:, 0] == edges[:, 1]
    if np.any(loops):
        v = int(edges[np.argmax(loops), 0])
        raise SelfLoopError(f"self-loop at vertex {v}")
    edges = _canonical_edges(edges)
    if edges.shape[0] > 1:
        dup = np.all(edges[1:] == edges[:-1], axis=1)
        if np.any(dup):
            u, v = edges[1:][dup][0]
            raise DuplicateEdgeError(f"duplicate edge ({int(u)}, {int(v)})")
    return _graph_from_canonical(n_vertices, edges)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, np.ndarray]:
    """Subgraph induced by a vertex set, relabeled to ``[0, k)``.

    Returns ``(subgraph, vertex_ids)`` where ``vertex_ids[local] = global``
    (ascending); the inverse map is ``np.searchsorted(vertex_ids, globals)``.
    """
    verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
    if verts.size and (verts.min() < 0 or verts.max() >= g.n_vertices):
        raise VertexOutOfRangeError("subgraph vertex outside the graph universe")
    mask = np.zeros(g.n_vertices, dtype=bool)
    mask[verts] = True
    e = g.edges
    keep = mask[e[:, 0]] & mask[e[:, 1]] if e.size else np.zeros(0, dtype=bool)
    local = np.searchsorted(verts, e[keep])
    sub = _graph_from_canonical(verts.shape[0], _canonical_edges(local.reshape(-1, 2)))
    return sub, _freeze(verts)


def simplify(mg: MultiGraph) -> tuple[Graph, int]:
    """Collapse a multigraph to a simple graph.

    Drops self-loops and keeps one edge per distinct unordered pair. Returns
    ``(graph, excess_count)`` where ``excess_count`` is the number of edges
    removed.
    """
    e = mg.edges
    if e.size:
        e = e[e[:, 0] != e[:, 1]]
        e = np.unique(_canonical_edges(e), axis=0) if e.size else e.reshape(0, 2)
    else:
        e = e.reshape(0, 2)
    g = _graph_from_canonical(mg.n_vertices, e)
    return g, mg.n_edges - g.n_edges


def graph_union(a: Graph, b: Graph) -> Graph:
    """Edge-set union of two graphs over the same vertex universe."""
    if a.n_vertices != b.n_vertices:
        raise VertexUniverseMismatchError(
            f"vertex universes differ: {a.n_vertices} vs {b.n_vertices}"
        )
    edges = np.concatenate((a.edges, b.edges), axis=0)
    if edges.size:
        edges = np.unique(edges, axis=0)
    return _graph_from_canonical(a.n_vertices, edges)


def connected_components(g: Graph) -> tuple[int, np.ndarray]:
    """Component count and a per-vertex component label array."""
    if g.n_vertices == 0:
        return 0, np.zeros(0, dtype=np.int64)
    n, labels = csgraph.connected_components(g.adjacency_csr(np.int8), directed=False)
    return int(n), labels.astype(np.int64)
