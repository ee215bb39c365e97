"""Edge-list and clustering TSV ingest and output.

Files use one record per line, tab (or any whitespace) separated, with
``#`` comment lines and blank lines ignored. Vertex and cluster ids in files
are arbitrary non-negative integers; they are densified to ``[0, n)`` /
``[0, m)`` by ascending original id, and the original ids are returned so
outputs can be written back in the caller's id space.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ParseError
from .graph import Clustering, Graph, MultiGraph, build_graph, simplify

__all__ = [
    "load_network",
    "load_clustering",
    "write_network",
    "write_clustering",
    "atomic_write_text",
]


def _parse_pairs(path) -> list[tuple[int, int, int]]:
    """All ``(a, b, line_no)`` integer pairs in a TSV file."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise ParseError(path, line_no, f"expected 2 fields, got {len(parts)}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(path, line_no, f"non-integer field in {parts!r}")
            if a < 0 or b < 0:
                raise ParseError(path, line_no, "ids must be non-negative")
            rows.append((a, b, line_no))
    return rows


def load_network(path, coerce_simple: bool = False) -> tuple[Graph, np.ndarray]:
    """Read an edge-list TSV into a graph plus its original-id map.

    Returns ``(graph, vertex_labels)`` with ``vertex_labels[dense] = original``.
    Self-loops and duplicate edges are rejected unless ``coerce_simple`` is
    set, in which case the input is silently simplified.
    """
    rows = _parse_pairs(path)
    raw = np.array([(a, b) for a, b, _ in rows], dtype=np.int64).reshape(-1, 2)
    labels = np.unique(raw) if raw.size else np.zeros(0, dtype=np.int64)
    dense = np.searchsorted(labels, raw) if raw.size else raw
    if coerce_simple:
        g, _ = simplify(MultiGraph(labels.shape[0], dense))
        return g, labels
    try:
        g = build_graph(dense, n_vertices=labels.shape[0])
    except Exception as exc:
        line = _locate_offender(rows, labels, str(exc))
        raise ParseError(path, line, str(exc)) from exc
    return g, labels


def _locate_offender(rows, labels, message) -> int:
    """Best-effort line number for a rejected edge (loop or duplicate)."""
    seen = set()
    for a, b, line_no in rows:
        if a == b:
            return line_no
        key = (min(a, b), max(a, b))
        if key in seen:
            return line_no
        seen.add(key)
    return rows[-1][2] if rows else 1


def load_clustering(path, vertex_labels: np.ndarray) -> tuple[Clustering, np.ndarray]:
    """Read a ``node<TAB>cluster`` TSV against a known vertex universe.

    Nodes absent from the file become outliers. Returns
    ``(clustering, cluster_labels)`` with ``cluster_labels[dense] = original``.
    """
    rows = _parse_pairs(path)
    assignment = np.full(vertex_labels.shape[0], -1, dtype=np.int64)
    raw_cluster = {}
    for node, cluster, line_no in rows:
        idx = np.searchsorted(vertex_labels, node)
        if idx >= vertex_labels.shape[0] or vertex_labels[idx] != node:
            raise ParseError(path, line_no, f"node {node} is not in the network")
        if idx in raw_cluster:
            raise ParseError(path, line_no, f"node {node} assigned twice")
        raw_cluster[idx] = cluster
    cluster_labels = np.unique(np.array(list(raw_cluster.values()), dtype=np.int64))
    for idx, cluster in raw_cluster.items():
        assignment[idx] = np.searchsorted(cluster_labels, cluster)
    return Clustering(assignment), cluster_labels


def atomic_write_text(path, text: str) -> None:
    """Write a file via a temp sibling + rename so readers never see a prefix."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_network(path, g: Graph, vertex_labels: np.ndarray | None = None) -> None:
    """Write a graph as an edge-list TSV in original-id space, sorted rows."""
    e = g.edge_array()
    if vertex_labels is not None:
        e = vertex_labels[e]
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        order = np.lexsort((hi, lo))
        e = np.column_stack((lo[order], hi[order]))
    lines = [f"{u}\t{v}" for u, v in e.tolist()]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def write_clustering(
    path,
    c: Clustering,
    vertex_labels: np.ndarray | None = None,
    cluster_labels: np.ndarray | None = None,
) -> None:
    """Write ``node<TAB>cluster`` rows for clustered vertices, ascending by node."""
    assigned = np.flatnonzero(c.assignment >= 0)
    nodes = vertex_labels[assigned] if vertex_labels is not None else assigned
    cl = c.assignment[assigned]
    if cluster_labels is not None:
        cl = cluster_labels[cl]
    order = np.argsort(nodes, kind="stable")
    lines = [f"{nodes[i]}\t{cl[i]}" for i in order]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))
