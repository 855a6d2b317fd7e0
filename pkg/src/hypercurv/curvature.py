"""HLRC, HFRC and HORC edge curvatures.

All three engines evaluate edges independently against a shared immutable
:class:`~hypercurv.hypergraph.NeighborhoodIndex` and write each value into
the slot of its edge index, so results do not depend on the thread count.
Edges with fewer than two nodes are skipped by every method.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .hypergraph import DistanceOracle, Hypergraph, NeighborhoodIndex, build_neighborhood_index, clique_expansion
from .transport import DiscreteMeasure, solve_transport

logger = logging.getLogger(__name__)

METHODS = ("hlrc", "hfrc", "horc")

# neighbors of two adjacent nodes are never more than three hops apart
_SUPPORT_RADIUS = 3


class CurvatureTimeout(RuntimeError):
    """Raised when a curvature sweep passes its deadline."""


@dataclass(frozen=True)
class CurvatureVector:
    method: str
    values: np.ndarray
    skipped: frozenset[int]

    def valid(self) -> np.ndarray:
        """Values of the edges that were not skipped, in edge order."""
        mask = np.ones(len(self.values), dtype=bool)
        mask[list(self.skipped)] = False
        return self.values[mask]


def hlrc_edge(index: NeighborhoodIndex, j: int) -> float:
    """Lower Ricci curvature of edge ``j`` (exact rational, correctly rounded)."""
    e = index.edges[j]
    d_e = len(e)
    if d_e < 2:
        raise ValueError(f"edge {j} has size {d_e}; HLRC needs at least two nodes")
    n_e = int(index.edge_common_neighbors[j])
    nvs = [int(index.node_neighbor_count[v]) for v in e]
    hi, lo = max(nvs), min(nvs)
    # everything over the common denominator 2*lcm(n_v); (n_e + d_e/2 - 1) doubled to stay integral
    den = 2 * math.lcm(*nvs)
    num = 2 * sum(den // (2 * nv) for nv in nvs)
    num += (2 * n_e + d_e - 2) * (den // (2 * hi) + den // (2 * lo))
    return (num - den) / den


def hfrc_edge(index: NeighborhoodIndex, j: int) -> float:
    e = index.edges[j]
    if len(e) < 2:
        raise ValueError(f"edge {j} has size {len(e)}; HFRC needs at least two nodes")
    return float(2 * len(e) - sum(int(index.node_degree[v]) for v in e))


def random_walk_measure(index: NeighborhoodIndex, v: int) -> DiscreteMeasure:
    """Uniform mass on the neighbors of ``v``, none on ``v`` itself."""
    nbrs = index.node_neighbors[v]
    if not nbrs:
        raise ValueError(f"node {v} is isolated; its random-walk measure is undefined")
    support = np.asarray(nbrs, dtype=np.int64)
    return DiscreteMeasure(support, np.full(len(support), 1.0 / len(support)))


def pair_w1(index: NeighborhoodIndex, dist: DistanceOracle, u: int, v: int) -> float:
    """W1 between the random-walk measures of ``u`` and ``v``.

    Mass the two measures share stays in place at zero cost (optimal for a
    metric ground cost), so only the signed difference is transported.
    """
    nu_, nv_ = index.node_neighbors[u], index.node_neighbors[v]
    if not nu_ or not nv_:
        raise ValueError(f"isolated node in pair ({u}, {v})")
    wu, wv = 1.0 / len(nu_), 1.0 / len(nv_)
    diff: dict[int, float] = {}
    for x in nu_:
        diff[x] = wu
    for y in nv_:
        diff[y] = diff.get(y, 0.0) - wv
    src = [(x, w) for x, w in diff.items() if w > 1e-15]
    dst = [(y, -w) for y, w in diff.items() if w < -1e-15]
    if not src or not dst:
        return 0.0
    cost = np.empty((len(src), len(dst)))
    for i, (x, _) in enumerate(src):
        row = dist.distances_from(x, cutoff=_SUPPORT_RADIUS)
        for jj, (y, _) in enumerate(dst):
            d = row.get(y)
            if d is None:
                raise ValueError(f"nodes {x} and {y} are disconnected")
            cost[i, jj] = d
    a = np.array([w for _, w in src])
    b = np.array([w for _, w in dst])
    b *= a.sum() / b.sum()
    return solve_transport(a, b, cost, mass_tol=1e-9).value


def horc_edge(index: NeighborhoodIndex, dist: DistanceOracle, j: int, cache: dict | None = None) -> float:
    """One minus the mean pairwise W1 over all member pairs of edge ``j``.

    ``cache`` maps sorted node pairs to W1 and may be shared across edges.
    """
    e = index.edges[j]
    d_e = len(e)
    if d_e < 2:
        raise ValueError(f"edge {j} has size {d_e}; HORC needs at least two nodes")
    total = 0.0
    for a in range(d_e):
        for b in range(a + 1, d_e):
            key = (e[a], e[b])
            w = None if cache is None else cache.get(key)
            if w is None:
                w = pair_w1(index, dist, e[a], e[b])
                if cache is not None:
                    cache[key] = w
            total += w
    return 1.0 - 2.0 * total / (d_e * (d_e - 1))


def _sweep(
    index: NeighborhoodIndex,
    method: str,
    edge_fn: Callable[[int], float],
    threads: int = 1,
    deadline: float | None = None,
) -> CurvatureVector:
    m = len(index.edges)
    values = np.full(m, np.nan)
    skipped: set[int] = set()

    def work(lo: int, hi: int) -> set[int]:
        local = set()
        for j in range(lo, hi):
            if deadline is not None and (j - lo) % 64 == 0 and time.monotonic() > deadline:
                raise CurvatureTimeout(f"{method} passed its deadline at edge {j}")
            if index.edge_size[j] < 2:
                local.add(j)
                continue
            try:
                values[j] = edge_fn(j)
            except ValueError as exc:
                logger.info("%s: skipping edge %d (%s)", method, j, exc)
                local.add(j)
        return local

    if threads <= 1 or m < 2:
        skipped |= work(0, m)
    else:
        bounds = np.linspace(0, m, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(lambda t: work(bounds[t], bounds[t + 1]), range(threads)):
                skipped |= part
    return CurvatureVector(method, values, frozenset(skipped))


def hlrc_all(H: Hypergraph | NeighborhoodIndex, threads: int = 1, deadline: float | None = None) -> CurvatureVector:
    index = H if isinstance(H, NeighborhoodIndex) else build_neighborhood_index(H)
    return _sweep(index, "hlrc", lambda j: hlrc_edge(index, j), threads, deadline)


def hfrc_all(H: Hypergraph | NeighborhoodIndex, threads: int = 1, deadline: float | None = None) -> CurvatureVector:
    index = H if isinstance(H, NeighborhoodIndex) else build_neighborhood_index(H)
    return _sweep(index, "hfrc", lambda j: hfrc_edge(index, j), threads, deadline)


def horc_all(H: Hypergraph | NeighborhoodIndex, threads: int = 1, deadline: float | None = None) -> CurvatureVector:
    index = H if isinstance(H, NeighborhoodIndex) else build_neighborhood_index(H)
    dist = clique_expansion(index.hypergraph, index)
    cache: dict[tuple[int, int], float] = {}
    return _sweep(index, "horc", lambda j: horc_edge(index, dist, j, cache), threads, deadline)


def compute(H: Hypergraph | NeighborhoodIndex, method: str, threads: int = 1, deadline: float | None = None) -> CurvatureVector:
    fns = {"hlrc": hlrc_all, "hfrc": hfrc_all, "horc": horc_all}
    if method not in fns:
        raise ValueError(f"unknown curvature method {method!r}; expected one of {METHODS}")
    return fns[method](H, threads=threads, deadline=deadline)
