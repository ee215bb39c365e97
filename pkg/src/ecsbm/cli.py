"""Command-line interface.

Subcommands: ``extract`` (dump sampler parameters and connectivity targets),
``generate`` (synthesize a network in ``ecsbm`` or plain ``sbm`` mode),
``evaluate`` (distance report between two network/clustering pairs), and
``diagnose`` (baseline pathology report). Exit codes: 0 success, 1 usage,
2 input parse/read failure, 3 invariant violation. All file outputs are
written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import EcsbmError, ParseError, UniverseMismatchError
from .graph import Clustering, Graph
from .io import (
    atomic_write_text,
    load_clustering,
    load_network,
    write_clustering,
    write_network,
)
from .params import (
    extract_connectivity_targets,
    outlier_aux_params,
    extract_sbm_params,
    split_subnetworks,
)
from .pipeline import (
    DEFAULT_SEED,
    PipelineConfig,
    diagnose_plain_sbm,
    generate_ecsbm,
    generate_plain_sbm,
)
from .stats import STAT_NAMES, compute_stat_report, distances

__all__ = ["main", "RunConfig"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3


@dataclass
class RunConfig:
    """Parsed invocation: the subcommand plus everything it needs."""

    subcommand: str
    network: str | None = None
    clustering: str | None = None
    synthetic_network: str | None = None
    synthetic_clustering: str | None = None
    mode: str = "ecsbm"
    seed: int = DEFAULT_SEED
    threads: int = 1
    out: str | None = None
    out_prefix: str | None = None
    sequences_csv: str | None = None
    stats: tuple[str, ...] | None = None
    kecssn_order: str = "decreasing-degree"
    coerce_simple: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_threads() -> int:
    env = os.environ.get("ECSBM_THREADS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _build_parser() -> _Parser:
    parser = _Parser(prog="ecsbm", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_inputs(p):
        p.add_argument("--network", required=True, help="edge-list TSV")
        p.add_argument("--clustering", required=True, help="node/cluster TSV")
        p.add_argument(
            "--coerce-simple",
            action="store_true",
            help="silently drop self-loops and duplicate edges at ingest",
        )

    p = sub.add_parser("extract", help="dump sampler parameters to JSON")
    add_inputs(p)
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("generate", help="generate a synthetic network")
    add_inputs(p)
    p.add_argument("--mode", choices=("ecsbm", "sbm"), default="ecsbm")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument(
        "--kecssn-order",
        choices=("decreasing-degree", "vertex-id"),
        default="decreasing-degree",
        help="vertex processing order in the spanning-subgraph construction",
    )

    p = sub.add_parser("evaluate", help="distance report between two pairs")
    add_inputs(p)
    p.add_argument("--synthetic-network", required=True)
    p.add_argument("--synthetic-clustering", required=True)
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--sequences-csv", default=None, help="optional CSV of sequences")
    p.add_argument(
        "--stats",
        default=None,
        help=f"comma-separated subset of {','.join(STAT_NAMES)}",
    )
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("diagnose", help="baseline pathology report")
    add_inputs(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", default=None, help="output JSON path (stdout if omitted)")
    p.add_argument("--threads", type=int, default=None)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand)
    for name in vars(args):
        if name == "subcommand":
            continue
        value = getattr(args, name)
        attr = name.replace("-", "_")
        if attr == "stats" and value is not None:
            names = tuple(s.strip() for s in value.split(",") if s.strip())
            bad = [s for s in names if s not in STAT_NAMES]
            if bad:
                print(f"ecsbm: unknown statistics: {bad}", file=sys.stderr)
                raise SystemExit(EXIT_USAGE)
            value = names
        if attr == "threads":
            value = value if value is not None else _default_threads()
        setattr(cfg, attr, value)
    return cfg


def _dump_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(path, text)


def _triplets(e: sp.csr_matrix) -> list[list[int]]:
    tri = sp.triu(e, k=0).tocoo()
    order = np.lexsort((tri.col, tri.row))
    return [
        [int(r), int(s), int(v)]
        for r, s, v in zip(tri.row[order], tri.col[order], tri.data[order])
    ]


def _load_pair(cfg: RunConfig, network: str, clustering: str):
    g, vertex_labels = load_network(network, coerce_simple=cfg.coerce_simple)
    c, cluster_labels = load_clustering(clustering, vertex_labels)
    return g, c, vertex_labels, cluster_labels


def _run_extract(cfg: RunConfig) -> int:
    g, c, vertex_labels, cluster_labels = _load_pair(cfg, cfg.network, cfg.clustering)
    clustered, outlier = split_subnetworks(g, c)
    targets = extract_connectivity_targets(clustered, c, threads=cfg.threads)
    aux = outlier_aux_params(outlier, c)
    payload = {
        "n_vertices": g.n_vertices,
        "n_edges": g.n_edges,
        "n_clusters": c.n_clusters,
        "n_outliers": int(c.outliers().shape[0]),
        "vertex_ids": vertex_labels.tolist(),
        "cluster_ids": cluster_labels.tolist(),
        "assignment": c.assignment.tolist(),
        "connectivity_targets": targets.values.tolist(),
        "clustered": {
            "d": clustered.degrees().tolist(),
            "e": _extract_clustered_triplets(clustered, c),
        },
        "outlier": {
            "d": outlier.degrees().tolist(),
            "e": _triplets(aux.e),
            "singleton_blocks_start": c.n_clusters,
        },
    }
    _dump_json(cfg.out, payload)
    return EXIT_OK


def _extract_clustered_triplets(clustered: Graph, c: Clustering) -> list[list[int]]:
    non_out = np.flatnonzero(c.assignment >= 0)
    if non_out.size == 0:
        return []
    from .graph import induced_subgraph

    h, verts = induced_subgraph(clustered, non_out)
    params = extract_sbm_params(h, Clustering(c.assignment[verts]))
    return _triplets(params.e)


def _run_generate(cfg: RunConfig) -> int:
    g, c, vertex_labels, cluster_labels = _load_pair(cfg, cfg.network, cfg.clustering)
    pconf = PipelineConfig(
        seed=cfg.seed, threads=cfg.threads, kecssn_ordering=cfg.kecssn_order
    )
    if cfg.mode == "ecsbm":
        result = generate_ecsbm(g, c, pconf)
    else:
        result = generate_plain_sbm(g, c, pconf)
    write_network(cfg.out_prefix + ".edges.tsv", result.network, vertex_labels)
    write_clustering(
        cfg.out_prefix + ".clustering.tsv",
        result.clustering,
        vertex_labels,
        cluster_labels,
    )
    _dump_json(cfg.out_prefix + ".provenance.json", result.provenance)
    return EXIT_OK


def _run_evaluate(cfg: RunConfig) -> int:
    emp_g, emp_c, emp_v, emp_cl = _load_pair(cfg, cfg.network, cfg.clustering)
    syn_g, syn_c, syn_v, syn_cl = _load_pair(
        cfg, cfg.synthetic_network, cfg.synthetic_clustering
    )
    if not np.array_equal(emp_v, syn_v):
        raise UniverseMismatchError("the two networks cover different vertex ids")
    if not np.array_equal(emp_c.assignment >= 0, syn_c.assignment >= 0):
        raise UniverseMismatchError("the two clusterings have different outliers")
    if emp_c.n_clusters != syn_c.n_clusters:
        raise UniverseMismatchError("the two clusterings have different cluster counts")
    emp_report = compute_stat_report(emp_g, emp_c, stats=cfg.stats, threads=cfg.threads)
    syn_report = compute_stat_report(syn_g, syn_c, stats=cfg.stats, threads=cfg.threads)
    dist = distances(emp_report, syn_report)
    payload = {
        "distances": dist.to_json_dict(),
        "empirical": _scalar_summary(emp_report),
        "synthetic": _scalar_summary(syn_report),
    }
    _dump_json(cfg.out, payload)
    if cfg.sequences_csv:
        _write_sequences_csv(cfg.sequences_csv, emp_report, syn_report)
    return EXIT_OK


def _scalar_summary(report) -> dict:
    return {
        "pseudo_diameter": report.pseudo_diameter,
        "char_time": report.char_time,
        "char_time_converged": report.char_time_converged,
        "global_ccoeff": report.global_ccoeff,
        "largest_component_only": report.largest_component_only,
        "n_vertices": report.n_vertices,
        "n_clusters": report.n_clusters,
        "n_outliers": report.n_outliers,
    }


def _write_sequences_csv(path: str, emp, syn) -> None:
    lines = ["statistic,index,empirical,synthetic"]
    for name in ("degree", "mixing_mus", "mincuts", "c_edge", "o_deg"):
        x = getattr(emp, name)
        y = getattr(syn, name)
        if x is None or y is None:
            continue
        for i, (a, b) in enumerate(zip(x.tolist(), y.tolist())):
            lines.append(f"{name},{i},{a},{b}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def _run_diagnose(cfg: RunConfig) -> int:
    g, c, _, _ = _load_pair(cfg, cfg.network, cfg.clustering)
    pconf = PipelineConfig(seed=cfg.seed, threads=cfg.threads)
    diag = diagnose_plain_sbm(g, c, pconf)
    payload = {
        "disconnected_cluster_fraction": diag.disconnected_cluster_fraction,
        "excess_edge_proportion": diag.excess_edge_proportion,
        "n_clusters": diag.n_clusters,
        "n_disconnected_clusters": diag.n_disconnected_clusters,
        "n_multigraph_edges": diag.n_edges,
        "n_excess_edges": diag.n_excess_edges,
        "seed": cfg.seed,
    }
    _dump_json(cfg.out, payload)
    return EXIT_OK


_RUNNERS = {
    "extract": _run_extract,
    "generate": _run_generate,
    "evaluate": _run_evaluate,
    "diagnose": _run_diagnose,
}


def run(cfg: RunConfig) -> int:
    """Execute one parsed invocation; raises package errors unwrapped."""
    return _RUNNERS[cfg.subcommand](cfg)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(cfg)
    except ParseError as exc:
        print(f"ecsbm: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"ecsbm: io error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EcsbmError, AssertionError) as exc:
        print(f"ecsbm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
