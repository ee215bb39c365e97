"""Seeded construction of k-edge-connected spanning subgraphs per cluster.

The construction orders a cluster's vertices, wires the first k+1 into a
clique, then attaches every later vertex to k already-placed vertices chosen
at random with probability proportional to each candidate's remaining target
degree. Any graph built this way has edge connectivity at least k: a cut
either splits the initial clique (at least k crossing clique edges) or
isolates the earliest vertex placed on the far side together with its k
attachment edges.

Every created edge debits the degree/edge-count budget shared with the
block-model sampler; a debit that would drive any entry negative is rolled
back as a whole (the edge itself is always kept).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import KTooLargeError, NotEnoughCandidatesError
from .graph import Graph, _canonical_edges, _graph_from_canonical
from .params import SbmParams

__all__ = ["KecssnConfig", "ParamBudget", "gen_kecssn", "select_neighbors"]

_ORDERINGS = ("decreasing-degree", "vertex-id")


@dataclass(frozen=True)
class KecssnConfig:
    """The three configurable pieces of the construction plus its seed.

    Only the listed policies are implemented; the defaults match the intended
    behavior (degree-descending processing, clique seed, availability-weighted
    neighbor choice).
    """

    ordering: str = "decreasing-degree"
    init: str = "clique"
    neighbor_selection: str = "availability-weighted"
    rng_seed: int = 0

    def __post_init__(self):
        if self.ordering not in _ORDERINGS:
            raise ValueError(f"ordering must be one of {_ORDERINGS}")
        if self.init != "clique":
            raise ValueError("only clique initialization is supported")
        if self.neighbor_selection != "availability-weighted":
            raise ValueError("only availability-weighted selection is supported")


class ParamBudget:
    """Mutable degree / edge-count budget over block-model parameters.

    Tracks the remaining target degree of every vertex and the remaining
    internal edge count of every block while spanning subgraphs are built.
    ``try_apply_edge`` debits atomically: either all three decrements land
    (d_i, d_j by one, the block diagonal by two) or none do, so entries stay
    non-negative and row sums stay consistent with block degree sums.
    """

    def __init__(self, params: SbmParams) -> None:
        params.validate()
        self.b = params.b
        self.d = params.d.copy()
        self.e_diag = params.e.diagonal().astype(np.int64)
        self._e_offdiag = (
            params.e - sp.diags(params.e.diagonal(), 0, format="csr", dtype=np.int64)
        ).tocsr()
        self._e_offdiag.eliminate_zeros()
        self.reversals = np.zeros(params.n_blocks, dtype=np.int64)

    def availability(self, vertices: np.ndarray) -> np.ndarray:
        """Remaining target degrees, the sampling weight for attachment."""
        return self.d[vertices]

    def try_apply_edge(self, i: int, j: int) -> bool:
        """Debit one intra-block edge (i, j); returns False on rollback."""
        l = int(self.b[i])
        if self.d[i] >= 1 and self.d[j] >= 1 and self.e_diag[l] >= 2:
            self.d[i] -= 1
            self.d[j] -= 1
            self.e_diag[l] -= 2
            return True
        self.reversals[l] += 1
        return False

    def to_params(self) -> SbmParams:
        """Remaining parameters, for handing to the block-model sampler."""
        m = self.e_diag.shape[0]
        e = self._e_offdiag + sp.diags(self.e_diag, 0, format="csr", dtype=np.int64)
        return SbmParams(b=self.b.copy(), d=self.d.copy(), e=e.tocsr())


def select_neighbors(candidates, k: int, availability, rng) -> np.ndarray:
    """Sample k distinct candidates without replacement, weighted by
    availability; once no positive weight remains, the rest of the picks are
    uniform over the unchosen candidates."""
    cand = np.asarray(candidates)
    avail = np.asarray(availability, dtype=np.float64)
    n = cand.shape[0]
    if k > n:
        raise NotEnoughCandidatesError(f"need {k} picks from {n} candidates")
    if k == n:
        return cand.copy()
    weights = np.maximum(avail, 0.0).copy()
    alive = np.ones(n, dtype=bool)
    picks = np.empty(k, dtype=np.int64)
    for t in range(k):
        total = weights.sum()
        if total > 0:
            i = int(rng.choice(n, p=weights / total))
        else:
            i = int(rng.choice(np.flatnonzero(alive)))
        picks[t] = i
        weights[i] = 0.0
        alive[i] = False
    return cand[picks]


def gen_kecssn(vertices, k: int, budget: ParamBudget, cfg: KecssnConfig) -> Graph:
    """Spanning subgraph on ``vertices`` with edge connectivity >= k.

    ``vertices`` are global ids of one block; the returned graph is labeled
    by position in ``vertices``. k = 0 (or a single vertex) yields the empty
    edge set. Exactly C(k+1, 2) + (len(vertices) - k - 1) * k edges are
    created; every one debits ``budget`` (with rollback on exhaustion).
    """
    verts = np.asarray(vertices, dtype=np.int64)
    nv = verts.shape[0]
    if k > max(nv - 1, 0):
        raise KTooLargeError(f"k={k} exceeds |V|-1={nv - 1}")
    if k <= 0 or nv <= 1:
        return _graph_from_canonical(nv, np.zeros((0, 2), dtype=np.int64))

    if cfg.ordering == "decreasing-degree":
        proc = np.lexsort((verts, -budget.availability(verts)))
    else:
        proc = np.argsort(verts, kind="stable")
    proc_globals = verts[proc]
    rng = np.random.default_rng(cfg.rng_seed)

    edges: list[tuple[int, int]] = []

    def add_edge(a: int, b: int) -> None:
        edges.append((int(proc[a]), int(proc[b])))
        budget.try_apply_edge(int(proc_globals[a]), int(proc_globals[b]))

    for j in range(1, k + 1):
        for i in range(j):
            add_edge(i, j)
    for t in range(k + 1, nv):
        avail = budget.availability(proc_globals[:t])
        chosen = select_neighbors(np.arange(t), k, avail, rng)
        for i in chosen:
            add_edge(int(i), t)

    arr = _canonical_edges(np.array(edges, dtype=np.int64))
    return _graph_from_canonical(nv, arr)
