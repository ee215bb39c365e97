"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import itertools
from collections import deque

import numpy as np

from ecsbm import Clustering, Graph, MultiGraph, build_graph, simplify


def random_pairs(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """m random vertex pairs (may repeat, may self-loop)."""
    return rng.integers(0, n, size=(m, 2))


def random_graph(rng: np.random.Generator, n: int, m_target: int) -> Graph:
    """Random simple graph: sample pairs, drop loops/duplicates."""
    g, _ = simplify(MultiGraph(n, random_pairs(rng, n, m_target)))
    return g


def random_connected_graph(rng: np.random.Generator, n: int, extra: int) -> Graph:
    """Random spanning tree plus `extra` random chords (connected by build)."""
    edges = []
    order = rng.permutation(n)
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.append((int(order[i]), int(order[j])))
    for _ in range(extra):
        u, v = rng.integers(0, n, size=2)
        if u != v:
            edges.append((int(u), int(v)))
    g, _ = simplify(MultiGraph(n, np.array(edges, dtype=np.int64)))
    return g


def random_clustering(
    rng: np.random.Generator, n: int, m: int, outlier_frac: float = 0.0
) -> Clustering:
    """Random total-or-partial assignment with every cluster non-empty."""
    assignment = rng.integers(0, m, size=n)
    assignment[rng.permutation(n)[:m]] = np.arange(m)  # ensure non-empty
    if outlier_frac > 0:
        taken = set(np.flatnonzero(np.bincount(assignment, minlength=m) == 1))
        for v in rng.permutation(n):
            if rng.random() < outlier_frac and assignment[v] not in taken:
                # keep clusters non-empty: only single out vertices from
                # clusters with at least 2 members
                cl = assignment[v]
                if np.count_nonzero(assignment == cl) > 1:
                    assignment[v] = -1
    return Clustering(assignment)


def union_find_components(g: Graph) -> np.ndarray:
    """Component labels by union-find, the oracle for connected_components."""
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edge_array().tolist():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    roots = {}
    labels = np.empty(g.n_vertices, dtype=np.int64)
    for v in range(g.n_vertices):
        r = find(v)
        labels[v] = roots.setdefault(r, len(roots))
    return labels


def bfs_distances_oracle(g: Graph, src: int) -> np.ndarray:
    dist = np.full(g.n_vertices, -1, dtype=np.int64)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in g.neighbors(u).tolist():
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def exact_diameter(g: Graph) -> int:
    """All-pairs BFS diameter of a connected graph."""
    best = 0
    for v in range(g.n_vertices):
        best = max(best, int(bfs_distances_oracle(g, v).max()))
    return best


def triangle_count_oracle(g: Graph) -> int:
    count = 0
    for a, b, c in itertools.combinations(range(g.n_vertices), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            count += 1
    return count


def wedge_count_oracle(g: Graph) -> int:
    deg = g.degrees()
    return int((deg * (deg - 1) // 2).sum())


def clustered_fixture(
    seed: int,
    n_clusters: int,
    size_lo: int,
    size_hi: int,
    intra_extra: float = 0.6,
    inter_edges_per_cluster: float = 2.0,
    n_outliers: int = 0,
    outlier_degree: int = 2,
) -> tuple[Graph, Clustering]:
    """Clustered network with guaranteed-connected clusters.

    Each cluster is a random spanning tree plus `intra_extra * size` chords;
    clusters are tied together by random inter-cluster edges; outliers attach
    to random clustered vertices.
    """
    rng = np.random.default_rng(seed)
    sizes = rng.integers(size_lo, size_hi + 1, size=n_clusters)
    starts = np.concatenate(([0], np.cumsum(sizes)))
    n_clustered = int(starts[-1])
    n = n_clustered + n_outliers
    edges = []
    assignment = np.full(n, -1, dtype=np.int64)
    for l in range(n_clusters):
        members = np.arange(starts[l], starts[l + 1])
        assignment[members] = l
        order = rng.permutation(members)
        for i in range(1, order.shape[0]):
            j = int(rng.integers(0, i))
            edges.append((int(order[i]), int(order[j])))
        for _ in range(int(intra_extra * sizes[l])):
            u, v = rng.choice(members, size=2, replace=False)
            edges.append((int(u), int(v)))
    n_inter = int(inter_edges_per_cluster * n_clusters)
    for _ in range(n_inter):
        la, lb = rng.choice(n_clusters, size=2, replace=False)
        u = int(rng.integers(starts[la], starts[la + 1]))
        v = int(rng.integers(starts[lb], starts[lb + 1]))
        edges.append((u, v))
    for o in range(n_clustered, n):
        deg = max(1, int(rng.poisson(outlier_degree)))
        targets = rng.choice(n_clustered + (o - n_clustered), size=deg, replace=False)
        for t in targets:
            edges.append((o, int(t)))
    g, _ = simplify(MultiGraph(n, np.array(edges, dtype=np.int64)))
    return g, Clustering(assignment)


def permute_vertices(rng: np.random.Generator, g: Graph) -> Graph:
    """Relabel vertices by a random permutation (for invariance checks)."""
    perm = rng.permutation(g.n_vertices)
    return build_graph(perm[g.edge_array()], n_vertices=g.n_vertices)
