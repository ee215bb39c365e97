"""Global minimum edge cut (edge connectivity) of simple undirected graphs.

``edge_connectivity`` runs Stoer-Wagner maximum-adjacency phases on a dense
unit-weight matrix, with an early exit to 0 when a components pre-pass finds
the graph disconnected. ``brute_force_mincut`` enumerates every proper
bipartition and serves as the exhaustive cross-check for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GraphTooLargeError
from .graph import Graph, connected_components

__all__ = ["CutResult", "edge_connectivity", "brute_force_mincut"]

_BRUTE_FORCE_MAX = 20


@dataclass
class CutResult:
    """A global min-cut value with one side of a witnessing bipartition.

    ``witness`` is a sorted vertex-id array for one side of the cut, or None
    when no proper bipartition exists (single-vertex graph).
    """

    cut_size: int
    witness: np.ndarray | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CutResult):
            return NotImplemented
        return self.cut_size == other.cut_size


def _count_crossing(g: Graph, side_mask: np.ndarray) -> int:
    e = g.edge_array()
    if not e.size:
        return 0
    return int(np.count_nonzero(side_mask[e[:, 0]] != side_mask[e[:, 1]]))


def edge_connectivity(g: Graph) -> CutResult:
    """Exact global minimum edge cut of ``g``.

    Disconnected graphs yield 0 with a component as witness; a single-vertex
    graph yields the sentinel 0 with no witness.
    """
    n = g.n_vertices
    if n <= 1:
        return CutResult(0, None)
    n_comp, labels = connected_components(g)
    if n_comp > 1:
        return CutResult(0, np.flatnonzero(labels == labels[0]))

    w = np.zeros((n, n), dtype=np.int64)
    e = g.edge_array()
    w[e[:, 0], e[:, 1]] = 1
    w[e[:, 1], e[:, 0]] = 1

    groups: list[list[int]] = [[v] for v in range(n)]
    active = np.ones(n, dtype=bool)
    best = np.iinfo(np.int64).max
    best_side: list[int] | None = None
    # Sentinel low enough that accumulated unit weights can never resurface
    # an already-selected or inactive vertex.
    neg = -(1 << 62)

    for _ in range(n - 1):
        act = np.flatnonzero(active)
        a0 = int(act[0])
        conn = w[a0].astype(np.int64)
        conn[~active] = neg
        conn[a0] = neg
        prev, last = a0, a0
        for _ in range(act.shape[0] - 1):
            v = int(np.argmax(conn))
            prev, last = last, v
            cut_of_phase = int(conn[v])
            conn += w[v]
            conn[v] = neg
        if cut_of_phase < best:
            best = cut_of_phase
            best_side = list(groups[last])
        # Contract `last` into `prev`.
        w[prev, :] += w[last, :]
        w[:, prev] += w[:, last]
        w[prev, prev] = 0
        w[last, :] = 0
        w[:, last] = 0
        active[last] = False
        groups[prev].extend(groups[last])
        groups[last] = []

    return CutResult(int(best), np.sort(np.array(best_side, dtype=np.int64)))


def brute_force_mincut(g: Graph) -> CutResult:
    """Exact min cut by enumerating all 2^(n-1) - 1 proper bipartitions."""
    n = g.n_vertices
    if n > _BRUTE_FORCE_MAX:
        raise GraphTooLargeError(f"brute force limited to n <= {_BRUTE_FORCE_MAX}")
    if n <= 1:
        return CutResult(0, None)
    e = g.edge_array()
    best = np.iinfo(np.int64).max
    best_mask = 1
    # Vertex n-1 is pinned to side 0, so each proper bipartition appears once.
    total = 1 << (n - 1)
    chunk = 1 << 16
    for start in range(1, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cuts = np.zeros(masks.shape[0], dtype=np.int64)
        for u, v in e.tolist():
            cuts += ((masks >> u) & 1) != ((masks >> v) & 1)
        i = int(np.argmin(cuts))
        if cuts[i] < best:
            best = int(cuts[i])
            best_mask = int(masks[i])
    side = np.array(
        [v for v in range(n) if (best_mask >> v) & 1], dtype=np.int64
    )
    return CutResult(best, side)
