"""Network and cluster statistics plus the distances used to compare an
empirical (network, clustering) pair against a synthetic one.

Scalar statistics: a lower-bound diameter estimate from iterated double-sweep
BFS, the relaxation time 1 / (1 - lambda_2) of the lazy random walk, and the
global clustering coefficient. Sequence statistics: per-vertex degrees and
mixing parameters, per-cluster edge connectivity and internal edge counts,
and per-outlier degrees. Scalars are compared by signed (relative)
difference, sequences by RMSE aligned on vertex/cluster identity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.sparse import csgraph

from .errors import EmptyGraphError, UniverseMismatchError
from .graph import Clustering, Graph, connected_components, induced_subgraph
from .mincut import edge_connectivity

__all__ = [
    "STAT_NAMES",
    "StatReport",
    "DistanceReport",
    "StatDistance",
    "CharTimeResult",
    "pseudo_diameter",
    "char_time",
    "global_ccoeff",
    "mixing_mus",
    "cluster_stats",
    "outlier_degrees",
    "compute_stat_report",
    "distances",
]

STAT_NAMES = (
    "pseudo_diameter",
    "char_time",
    "global_ccoeff",
    "degree",
    "mixing_mus",
    "mincuts",
    "c_edge",
    "o_deg",
)

_SCALARS = {"pseudo_diameter": "SD", "char_time": "SD", "global_ccoeff": "SRD"}


def _bfs_distances(g: Graph, source: int) -> np.ndarray:
    return csgraph.dijkstra(
        g.adjacency_csr(np.int8), directed=False, unweighted=True, indices=source
    )


def _largest_component(g: Graph) -> tuple[Graph, bool]:
    """(induced subgraph of the largest component, whether g was disconnected)."""
    n_comp, labels = connected_components(g)
    if n_comp <= 1:
        return g, False
    sizes = np.bincount(labels)
    sub, _ = induced_subgraph(g, np.flatnonzero(labels == int(np.argmax(sizes))))
    return sub, True


def pseudo_diameter(g: Graph) -> float:
    """Diameter lower bound by iterated double-sweep BFS.

    Starts at a maximum-degree vertex of the largest component, walks to a
    farthest vertex, and repeats until the eccentricity stops improving.
    The result is the largest eccentricity observed, hence never exceeds the
    true diameter (and is exact on trees).
    """
    if g.n_vertices == 0:
        raise EmptyGraphError("pseudo_diameter of an empty graph")
    h, _ = _largest_component(g)
    u = int(np.argmax(h.degrees()))
    best = -1.0
    while True:
        dist = _bfs_distances(h, u)
        ecc = float(dist.max())
        if ecc <= best:
            break
        best = ecc
        u = int(np.argmax(dist))
    return best


class CharTimeResult(NamedTuple):
    value: float
    converged: bool


def char_time(g: Graph, tol: float = 1e-8, max_iter: int = 100_000) -> CharTimeResult:
    """Relaxation time 1 / (1 - lambda_2) of the lazy random walk.

    The walk is (P + I) / 2 on the largest component, which shares its
    spectrum with the symmetric (I + D^-1/2 A D^-1/2) / 2; lambda_2 comes
    from power iteration on that operator, deflated against the known top
    eigenvector sqrt(degree). Iteration stops when the eigen-residual drops
    below ``tol``; if ``max_iter`` is exhausted first, the best estimate is
    returned with ``converged=False``. Components with a single vertex are
    already stationary and report 1.0.
    """
    if g.n_vertices == 0:
        raise EmptyGraphError("char_time of an empty graph")
    h, _ = _largest_component(g)
    n = h.n_vertices
    if n < 2:
        return CharTimeResult(1.0, True)

    deg = h.degrees().astype(np.float64)
    inv_sqrt = 1.0 / np.sqrt(deg)
    adj = h.adjacency_csr(np.float64)
    top = np.sqrt(deg)
    top /= np.linalg.norm(top)

    def apply_lazy(vec: np.ndarray) -> np.ndarray:
        return 0.5 * (vec + inv_sqrt * (adj @ (inv_sqrt * vec)))

    rng = np.random.default_rng(0x5EED)
    y = rng.standard_normal(n)
    y -= (top @ y) * top
    norm = np.linalg.norm(y)
    if norm == 0.0:
        y = np.ones(n)
        y -= (top @ y) * top
        norm = np.linalg.norm(y)
    y /= norm

    lam = 0.0
    converged = False
    for _ in range(max_iter):
        z = apply_lazy(y)
        z -= (top @ z) * top
        lam = float(y @ z)
        residual = float(np.linalg.norm(z - lam * y))
        if residual <= tol:
            converged = True
            break
        norm = float(np.linalg.norm(z))
        if norm == 0.0:
            lam = 0.0
            converged = True
            break
        y = z / norm

    lam = min(max(lam, 0.0), 1.0 - 1e-15)
    return CharTimeResult(1.0 / (1.0 - lam), converged)


def global_ccoeff(g: Graph) -> float:
    """Global clustering coefficient 3 * triangles / wedges (0 if no wedges)."""
    deg = g.degrees().astype(np.int64)
    wedges = int((deg * (deg - 1) // 2).sum())
    if wedges == 0:
        return 0.0
    # Each triangle is a common neighbor of each of its three edges.
    common = 0
    for u, v in g.edge_array().tolist():
        common += np.intersect1d(
            g.neighbors(u), g.neighbors(v), assume_unique=True
        ).size
    return common / wedges


def mixing_mus(
    g: Graph, c: Clustering, include_outliers: bool = True
) -> np.ndarray:
    """Per-vertex fraction of neighbors outside the vertex's own cluster.

    Outliers count as singleton clusters, so every edge at an outlier is
    external (even to another outlier). Isolated vertices get 0. With
    ``include_outliers=False`` the sequence covers only clustered vertices,
    in ascending vertex id.
    """
    labels = c.assignment.copy()
    out = c.outliers()
    labels[out] = c.n_clusters + out
    e = g.edge_array()
    ext = np.zeros(g.n_vertices, dtype=np.int64)
    if e.size:
        crossing = labels[e[:, 0]] != labels[e[:, 1]]
        ends = e[crossing].ravel()
        ext = np.bincount(ends, minlength=g.n_vertices).astype(np.int64)
    deg = g.degrees()
    mus = np.divide(ext, deg, out=np.zeros(g.n_vertices), where=deg > 0)
    if not include_outliers:
        mus = mus[c.assignment >= 0]
    return mus


def cluster_stats(
    g: Graph, c: Clustering, threads: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cluster (edge connectivity, internal edge count) sequences."""

    def one(l: int) -> tuple[int, int]:
        sub, _ = induced_subgraph(g, c.members(l))
        return edge_connectivity(sub).cut_size, sub.n_edges

    if threads > 1 and c.n_clusters > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pairs = list(pool.map(one, range(c.n_clusters)))
    else:
        pairs = [one(l) for l in range(c.n_clusters)]
    mincuts = np.array([p[0] for p in pairs], dtype=np.int64)
    c_edge = np.array([p[1] for p in pairs], dtype=np.int64)
    return mincuts, c_edge


def outlier_degrees(g: Graph, c: Clustering) -> np.ndarray:
    """Degrees of the outlier vertices, ascending by vertex id."""
    return g.degrees()[c.outliers()]


@dataclass
class StatReport:
    """The eight comparison statistics for one (network, clustering) pair.

    Fields are None when skipped. ``largest_component_only`` records whether
    the scalar walk/diameter statistics fell back to the largest component.
    """

    n_vertices: int
    n_clusters: int
    n_outliers: int
    pseudo_diameter: float | None = None
    char_time: float | None = None
    char_time_converged: bool = True
    global_ccoeff: float | None = None
    degree: np.ndarray | None = None
    mixing_mus: np.ndarray | None = None
    mincuts: np.ndarray | None = None
    c_edge: np.ndarray | None = None
    o_deg: np.ndarray | None = None
    largest_component_only: bool = False


def compute_stat_report(
    g: Graph,
    c: Clustering,
    stats: tuple[str, ...] | None = None,
    threads: int = 1,
) -> StatReport:
    """Compute the requested statistics (all of them by default)."""
    wanted = set(STAT_NAMES if stats is None else stats)
    unknown = wanted - set(STAT_NAMES)
    if unknown:
        raise ValueError(f"unknown statistics: {sorted(unknown)}")
    report = StatReport(
        n_vertices=g.n_vertices,
        n_clusters=c.n_clusters,
        n_outliers=int(c.outliers().shape[0]),
    )
    if g.n_vertices:
        n_comp, _ = connected_components(g)
        report.largest_component_only = n_comp > 1
    if "pseudo_diameter" in wanted and g.n_vertices:
        report.pseudo_diameter = pseudo_diameter(g)
    if "char_time" in wanted and g.n_vertices:
        report.char_time, report.char_time_converged = char_time(g)
    if "global_ccoeff" in wanted:
        report.global_ccoeff = global_ccoeff(g)
    if "degree" in wanted:
        report.degree = g.degrees()
    if "mixing_mus" in wanted:
        report.mixing_mus = mixing_mus(g, c)
    if "mincuts" in wanted or "c_edge" in wanted:
        mincuts, c_edge = cluster_stats(g, c, threads=threads)
        if "mincuts" in wanted:
            report.mincuts = mincuts
        if "c_edge" in wanted:
            report.c_edge = c_edge
    if "o_deg" in wanted:
        report.o_deg = outlier_degrees(g, c)
    return report


@dataclass
class StatDistance:
    """One statistic's distance with its metric tag; ``value`` is None when
    the metric is undefined (zero-valued SRD reference)."""

    metric: str
    value: float | None


@dataclass
class DistanceReport:
    """Per-statistic distances between an empirical and a synthetic report."""

    entries: dict[str, StatDistance] = field(default_factory=dict)

    def value(self, name: str) -> float | None:
        return self.entries[name].value

    def to_json_dict(self) -> dict:
        return {
            name: {"metric": d.metric, "value": d.value}
            for name, d in self.entries.items()
        }


def _rmse(x: np.ndarray, y: np.ndarray) -> float:
    if x.shape != y.shape:
        raise UniverseMismatchError(
            f"sequence lengths differ: {x.shape[0]} vs {y.shape[0]}"
        )
    if x.size == 0:
        return 0.0
    diff = x.astype(np.float64) - y.astype(np.float64)
    return float(np.sqrt(np.mean(diff * diff)))


def distances(empirical: StatReport, synthetic: StatReport) -> DistanceReport:
    """Distance per statistic: signed difference for the positive scalars,
    signed relative difference for the clustering coefficient, RMSE for the
    identity-aligned sequences. Negative scalar distances mean the synthetic
    value is higher."""
    if (
        empirical.n_vertices != synthetic.n_vertices
        or empirical.n_clusters != synthetic.n_clusters
        or empirical.n_outliers != synthetic.n_outliers
    ):
        raise UniverseMismatchError(
            "reports cover different vertex/cluster/outlier universes"
        )
    report = DistanceReport()
    for name, metric in _SCALARS.items():
        x = getattr(empirical, name)
        y = getattr(synthetic, name)
        if x is None or y is None:
            continue
        if metric == "SD":
            report.entries[name] = StatDistance("SD", float(x - y))
        else:
            value = (x - y) / x if x != 0 else None
            report.entries[name] = StatDistance("SRD", value)
    for name in ("degree", "mixing_mus", "mincuts", "c_edge", "o_deg"):
        x = getattr(empirical, name)
        y = getattr(synthetic, name)
        if x is None or y is None:
            continue
        report.entries[name] = StatDistance("RMSE", _rmse(x, y))
    return report
