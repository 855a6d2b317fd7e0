"""Plain-text hyperedge lists and curvature reports."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np

from .curvature import METHODS, compute
from .hypergraph import Hypergraph, build_hypergraph, build_neighborhood_index

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("edge", "label", "hlrc", "hfrc", "horc", "skipped")


class ParseError(ValueError):
    pass


def fmt(x: float) -> str:
    """12 significant digits, locale-free; negative zero prints as ``0``."""
    return format(float(x) + 0.0, ".12g")


def read_hyperedges(lines: Iterable[str], source: str = "<input>") -> tuple[Hypergraph, dict[str, int]]:
    token_ids: dict[str, int] = {}
    edges: list[list[int]] = []
    labels: dict[int, str] = {}
    dropped = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if line.lstrip().startswith("%"):
            continue
        body, sep, label = line.partition("#")
        tokens = body.split()
        if not tokens:
            raise ParseError(f"{source}:{lineno}: empty hyperedge")
        seen = []
        for tok in tokens:
            v = token_ids.setdefault(tok, len(token_ids))
            if v in seen:
                dropped += 1
                continue
            seen.append(v)
        if sep and label.strip():
            labels[len(edges)] = label.strip()
        edges.append(seen)
    if dropped:
        logger.warning("%s: removed %d repeated tokens inside hyperedges", source, dropped)
    node_labels = {v: tok for tok, v in token_ids.items()}
    H = build_hypergraph(len(token_ids), edges, node_labels=node_labels, edge_labels=labels or None)
    return H, token_ids


def parse_hyperedges(path: str | os.PathLike) -> tuple[Hypergraph, dict[str, int]]:
    """Read a hyperedge list; node tokens get dense ids in order of first appearance."""
    with open(path, encoding="utf-8") as fh:
        return read_hyperedges(fh, source=str(path))


def write_hyperedges(H: Hypergraph, out: TextIO) -> None:
    for j, e in enumerate(H.edges):
        tokens = [H.node_token(v) for v in e]
        for tok in tokens:
            if not tok or any(c.isspace() for c in tok) or "#" in tok or tok.startswith("%"):
                raise ValueError(f"node token {tok!r} cannot be written to a hyperedge list")
        line = " ".join(tokens)
        label = H.edge_label(j)
        if label:
            line += f" # {label}"
        out.write(line + "\n")


def serialize_hyperedges(H: Hypergraph) -> str:
    buf = io.StringIO()
    write_hyperedges(H, buf)
    return buf.getvalue()


def save_hyperedges(H: Hypergraph, path: str | os.PathLike) -> None:
    Path(path).write_text(serialize_hyperedges(H), encoding="utf-8")


@dataclass
class EdgeRecord:
    edge: int
    members: list[str]
    label: str | None
    values: dict[str, float | None] = field(default_factory=dict)
    skipped: bool = False


@dataclass
class CurvatureReport:
    methods: tuple[str, ...]
    records: list[EdgeRecord]
    summary: dict[str, dict[str, float | None]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for rec in self.records:
            row = [str(rec.edge), rec.label or ""]
            for method in METHODS:
                val = rec.values.get(method)
                row.append("" if val is None else fmt(val))
            row.append("1" if rec.skipped else "0")
            writer.writerow(row)
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "methods": list(self.methods),
            "edges": [
                {
                    "edge": rec.edge,
                    "members": rec.members,
                    "label": rec.label,
                    **{method: rec.values.get(method) for method in METHODS},
                    "skipped": rec.skipped,
                }
                for rec in self.records
            ],
            "summary": self.summary,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def build_report(H: Hypergraph, methods: Iterable[str], threads: int = 1) -> CurvatureReport:
    methods = tuple(methods)
    for method in methods:
        if method not in METHODS:
            raise ValueError(f"unknown curvature method {method!r}; expected one of {METHODS}")
    index = build_neighborhood_index(H)
    results = {method: compute(index, method, threads=threads) for method in methods}
    records = []
    for j, e in enumerate(H.edges):
        rec = EdgeRecord(j, [H.node_token(v) for v in e], H.edge_label(j))
        for method, curv in results.items():
            if j in curv.skipped:
                rec.skipped = True
                rec.values[method] = None
            else:
                rec.values[method] = float(curv.values[j])
        records.append(rec)
    summary = {}
    for method, curv in results.items():
        vals = curv.valid()
        summary[method] = {
            "mean": float(np.mean(vals)) if len(vals) else None,
            "min": float(np.min(vals)) if len(vals) else None,
            "max": float(np.max(vals)) if len(vals) else None,
            "count": int(len(vals)),
        }
    return CurvatureReport(methods, records, summary)


def read_report_column(path: str | os.PathLike, method: str) -> tuple[list[float], list[str]]:
    """Values and labels of the non-skipped rows of a CSV curvature report."""
    values, labels = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row.get(method, "") == "":
                continue
            values.append(float(row[method]))
            labels.append(row.get("label", ""))
    return values, labels


def read_numbers(path: str | os.PathLike) -> list[float]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return [float(tok) for tok in text.split()]
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
