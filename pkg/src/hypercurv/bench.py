"""Runtime sweeps over Chung-Lu hypergraphs, one parameter varied at a time."""

from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import asdict, dataclass, fields
from typing import Sequence

import numpy as np

from .curvature import CurvatureTimeout, compute
from .generators import ParameterError, chung_lu_targets, gen_chung_lu
from .hypergraph import build_neighborhood_index

logger = logging.getLogger(__name__)

BASELINE = {"m": 1000, "n": 500, "dbar": 4}
SWEEPS = {
    "m": (500, 1000, 3000, 5000, 10000),
    "n": (50, 100, 200, 500, 1000),
    "dbar": (2, 3, 4, 5, 10, 15),
}


@dataclass
class BenchRecord:
    method: str
    vary: str
    m: int
    n: int
    dbar: int
    seed: int
    status: str
    realized_m: int | None = None
    realized_n: int | None = None
    realized_dbar: float | None = None
    index_ms: float | None = None
    ms: float | None = None


def run_cell(m: int, n: int, dbar: int, methods: Sequence[str], seed: int, timeout: float | None, vary: str = "") -> list[BenchRecord]:
    """Time every method on one generated instance.

    ``ms`` covers the curvature sweep only; building the neighborhood index is
    reported separately in ``index_ms``.
    """
    try:
        degrees, sizes = chung_lu_targets(m, n, dbar)
        H = gen_chung_lu(degrees, sizes, seed)
    except ParameterError as exc:
        logger.warning("skipping cell m=%d n=%d dbar=%d: %s", m, n, dbar, exc)
        return [BenchRecord(method, vary, m, n, dbar, seed, "skipped") for method in methods]

    realized = dict(
        realized_m=H.m,
        realized_n=int(np.count_nonzero(H.degrees())),
        realized_dbar=float(H.edge_sizes().mean()) if H.m else 0.0,
    )
    out = []
    for method in methods:
        t0 = time.perf_counter()
        index = build_neighborhood_index(H)
        t1 = time.perf_counter()
        deadline = None if timeout is None else time.monotonic() + timeout
        try:
            compute(index, method, deadline=deadline)
            status = "ok"
        except CurvatureTimeout:
            status = "timeout"
        t2 = time.perf_counter()
        out.append(
            BenchRecord(
                method, vary, m, n, dbar, seed, status, **realized,
                index_ms=(t1 - t0) * 1e3, ms=(t2 - t1) * 1e3 if status == "ok" else None,
            )
        )
    return out


def run_bench(
    vary: str,
    values: Sequence[int] | None = None,
    methods: Sequence[str] = ("hlrc", "hfrc", "horc"),
    seeds: Sequence[int] = (0,),
    timeout: float | None = None,
    baseline: dict | None = None,
) -> list[BenchRecord]:
    if vary not in SWEEPS:
        raise ValueError(f"cannot vary {vary!r}; expected one of {tuple(SWEEPS)}")
    base = dict(BASELINE if baseline is None else baseline)
    values = SWEEPS[vary] if values is None else values
    records = []
    for value in values:
        cell = dict(base, **{vary: int(value)})
        for seed in seeds:
            records.extend(run_cell(cell["m"], cell["n"], cell["dbar"], methods, seed, timeout, vary=vary))
    return records


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    names = [f.name for f in fields(BenchRecord)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for rec in records:
        row = []
        for name, val in asdict(rec).items():
            if val is None:
                row.append("")
            elif isinstance(val, float):
                row.append(format(val, ".12g"))
            else:
                row.append(str(val))
        writer.writerow(row)
    return buf.getvalue()


def power_law_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)
