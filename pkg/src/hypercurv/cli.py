"""Command-line entry point: ``compute``, ``gen``, ``cluster``, ``bench``, ``stats``.

Exit codes: 0 success, 1 computation error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis, bench, generators
from .curvature import METHODS
from .generators import ParameterError
from .hypergraph import HypergraphError
from .io import ParseError, build_report, fmt, parse_hyperedges, read_numbers, read_report_column, serialize_hyperedges
from .scores import wilcoxon_rank_sum

THREADS_ENV = "HYPERCURV_THREADS"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _methods(text: str) -> list[str]:
    methods = [x.strip().lower() for x in text.split(",") if x.strip()]
    for method in methods:
        if method not in METHODS:
            raise argparse.ArgumentTypeError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    return methods


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_compute(args) -> int:
    H, _ = parse_hyperedges(args.input)
    report = build_report(H, args.methods, threads=args.threads)
    _emit(report.to_csv() if args.format == "csv" else report.to_json(), args.out)
    return 0


def cmd_gen(args) -> int:
    fam = args.family
    truth = None

    def need(*names):
        missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"gen {fam} requires {', '.join(missing)}")

    if fam == "complete":
        need("n", "k")
        H = generators.gen_complete(args.n, args.k)
    elif fam == "hypercycle":
        need("k", "s", "m")
        H = generators.gen_hypercycle(args.k, args.s, args.m)
    elif fam == "hypertree":
        need("k", "r", "depth")
        H, truth = generators.gen_hypertree(args.k, args.r, args.depth)
    elif fam == "hypergrid":
        need("k")
        H = generators.gen_hypergrid(args.k)
    elif fam == "hsbm":
        need("blocks", "k", "a", "b")
        H, truth = generators.gen_hsbm(args.blocks, args.k, args.a, args.b, args.seed)
    else:
        if args.degrees is not None or args.sizes is not None:
            need("degrees", "sizes")
            degrees, sizes = args.degrees, args.sizes
        else:
            need("m", "n", "dbar")
            degrees, sizes = generators.chung_lu_targets(args.m, args.n, args.dbar)
        H = generators.gen_chung_lu(degrees, sizes, args.seed)

    _emit(serialize_hyperedges(H), args.out)
    if truth is not None and args.out not in (None, "-"):
        doc: dict = {"family": fam}
        if truth.node_labels is not None:
            doc["node_community"] = {H.node_token(v): int(c) for v, c in enumerate(truth.node_labels)}
        if truth.edge_intra is not None:
            doc["edge_intra"] = [bool(x) for x in truth.edge_intra]
        if truth.edge_roles is not None:
            doc["edge_roles"] = list(truth.edge_roles)
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out + ".truth.json")
    return 0


def _collection_paths(inputs: list[str]) -> list[tuple[str, Path]]:
    paths: list[Path] = []
    for item in inputs:
        p = Path(item)
        if p.is_dir():
            paths.extend(sorted(q for q in p.iterdir() if q.is_file() and not q.name.startswith(".")))
        elif p.suffix == ".manifest":
            for line in p.read_text(encoding="utf-8").splitlines():
                line = line.strip()
                if line and not line.startswith("#"):
                    q = Path(line)
                    paths.append(q if q.is_absolute() else p.parent / q)
        elif p.is_file():
            paths.append(p)
        else:
            raise FileNotFoundError(f"no such file or directory: {item}")
    if not paths:
        raise UsageError("no hypergraph files found")
    named = [(q.stem, q) for q in paths]
    names = [n for n, _ in named]
    if len(set(names)) != len(names):
        raise UsageError("hypergraph file names must be unique")
    return named


def _read_labels(path: str) -> dict[str, str]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if rows and [c.strip().lower() for c in rows[0][:2]] == ["name", "label"]:
        rows = rows[1:]
    return {r[0].strip(): r[1].strip() for r in rows if len(r) >= 2}


def cmd_cluster(args) -> int:
    named = _collection_paths(args.inputs)
    collection = [parse_hyperedges(p)[0] for _, p in named]
    names = [n for n, _ in named]
    truth = None
    if args.labels:
        label_map = _read_labels(args.labels)
        missing = [n for n in names if n not in label_map]
        if missing:
            raise UsageError(f"no label for: {', '.join(missing)}")
        truth = [label_map[n] for n in names]
    result = analysis.cluster_pipeline(
        collection, method=args.method, k=args.k, seed=args.seed, truth=truth, threads=args.threads, backend=args.backend
    )

    prefix = args.out_prefix
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "x", "y", "cluster"])
    for name, (x, y), lab in zip(names, result.embedding.points, result.labels):
        w.writerow([name, fmt(x), fmt(y), int(lab)])
    _emit(buf.getvalue(), f"{prefix}_embedding.csv")

    edges = analysis.bin_edges(args.method)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name"] + [f"{fmt(lo)}:{fmt(hi)}" for lo, hi in zip(edges[:-1], edges[1:])])
    for name, row in zip(names, result.histograms):
        w.writerow([name] + [fmt(v) for v in row])
    _emit(buf.getvalue(), f"{prefix}_histograms.csv")

    if result.scores is not None:
        doc = {"method": args.method, "k": args.k, "seed": args.seed, "n": len(names),
               "ari": result.scores.ari, "ami": result.scores.ami}
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", f"{prefix}_scores.json")
    return 0


def cmd_bench(args) -> int:
    baseline = {"m": args.m, "n": args.n, "dbar": args.dbar}
    records = bench.run_bench(
        args.vary, values=args.values, methods=args.methods, seeds=args.seeds, timeout=args.timeout, baseline=baseline
    )
    _emit(bench.records_to_csv(records), args.out)
    return 0


def cmd_wilcoxon(args) -> int:
    if args.report:
        if args.groups is None or len(args.groups) != 2:
            raise UsageError("--report needs --groups A,B naming two edge labels")
        values, labels = read_report_column(args.report, args.method)
        ga, gb = args.groups
        a = [v for v, lab in zip(values, labels) if lab == ga]
        b = [v for v, lab in zip(values, labels) if lab == gb]
    else:
        if len(args.samples) != 2:
            raise UsageError("give two sample files, or --report with --groups")
        a, b = read_numbers(args.samples[0]), read_numbers(args.samples[1])
    res = wilcoxon_rank_sum(a, b, method="exact" if args.exact else "asymptotic")
    doc = {"statistic": res.statistic, "p_value": res.p_value, "n_a": res.n_a, "n_b": res.n_b,
           "mean_a": float(np.mean(a)), "mean_b": float(np.mean(b))}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercurv", description="Hypergraph curvature toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="per-edge curvature of a hyperedge list")
    p.add_argument("input")
    p.add_argument("--methods", type=_methods, default=["hlrc"], help="comma list of hlrc,hfrc,horc")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("gen", help="generate a synthetic hypergraph")
    p.add_argument("family", choices=generators.FAMILIES)
    for name in ("n", "k", "s", "m", "r", "depth", "dbar"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--blocks", type=_int_list)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--degrees", type=_int_list)
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout); HSBM/hypertree truth goes to OUT.truth.json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cluster", help="cluster a collection of hypergraphs by curvature histograms")
    p.add_argument("inputs", nargs="+", help="directories, hyperedge files, or *.manifest path lists")
    p.add_argument("--method", choices=tuple(analysis.RANGES), default="hlrc")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", help="CSV of name,label for scoring")
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--backend", choices=("dense", "arpack"), default="dense")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bench", help="runtime sweep on Chung-Lu hypergraphs")
    p.add_argument("--vary", choices=tuple(bench.SWEEPS), required=True)
    p.add_argument("--values", type=_int_list)
    p.add_argument("--methods", type=_methods, default=list(METHODS))
    p.add_argument("--seeds", type=_int_list, default=[0])
    p.add_argument("--timeout", type=float, help="seconds per method and cell")
    p.add_argument("--m", type=int, default=bench.BASELINE["m"])
    p.add_argument("--n", type=int, default=bench.BASELINE["n"])
    p.add_argument("--dbar", type=int, default=bench.BASELINE["dbar"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="significance tests")
    stats_sub = p.add_subparsers(dest="test", required=True)
    w = stats_sub.add_parser("wilcoxon", help="two-sided Wilcoxon rank-sum test")
    w.add_argument("samples", nargs="*", help="two files of whitespace-separated numbers")
    w.add_argument("--report", help="curvature CSV from `compute`")
    w.add_argument("--method", choices=METHODS, default="hlrc")
    w.add_argument("--groups", type=lambda s: s.split(","), help="two edge labels, e.g. intra,inter")
    w.add_argument("--exact", action="store_true", help="exact permutation p-value (tie-free data)")
    w.add_argument("--out")
    w.set_defaults(func=cmd_wilcoxon)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "threads", 1) is None:
        args.threads = _default_threads()
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"hypercurv: {exc}", file=sys.stderr)
        return 2
    except (OSError, ParseError, HypergraphError) as exc:
        print(f"hypercurv: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"hypercurv: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
