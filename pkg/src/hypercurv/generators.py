"""Special uniform hypergraph families and random hypergraph models.

The special families come with exact HLRC values per edge (see
:func:`closed_form_hlrc`) and double as test oracles for the curvature code.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hypergraph import Hypergraph, build_hypergraph

NON_TERMINAL = "non-terminal"
TERMINAL = "terminal"
ISOLATED = "isolated"

FAMILIES = ("complete", "hypercycle", "hypertree", "hypergrid", "hsbm", "chunglu")


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    """Parameters for any generator family; unused fields stay ``None``."""

    family: str
    n: int | None = None
    k: int | None = None
    s: int | None = None
    m: int | None = None
    r: int | None = None
    depth: int | None = None
    block_sizes: tuple[int, ...] | None = None
    a: float | None = None
    b: float | None = None
    node_degrees: tuple[int, ...] | None = None
    edge_sizes: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class GroundTruth:
    node_labels: np.ndarray | None = None
    edge_intra: np.ndarray | None = None
    edge_roles: tuple[str, ...] | None = None


def _philox(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & 0xFFFFFFFFFFFFFFFF))


def gen_complete(n: int, k: int) -> Hypergraph:
    if k < 2 or k > n:
        raise ParameterError(f"complete hypergraph needs 2 <= k <= n, got n={n}, k={k}")
    return build_hypergraph(n, itertools.combinations(range(n), k))


def gen_hypercycle(k: int, s: int, m: int) -> Hypergraph:
    """Width-``k`` windows stepping by ``k - s`` around a cycle of ``m(k - s)`` nodes."""
    if not 1 <= s < k:
        raise ParameterError(f"hypercycle needs 1 <= s < k, got k={k}, s={s}")
    if m < 2:
        raise ParameterError(f"hypercycle needs m >= 2, got {m}")
    step = k - s
    n = m * step
    if n < k:
        raise ParameterError(f"hypercycle needs m(k-s) >= k, got {n} < {k}")
    edges = [[(j * step + t) % n for t in range(k)] for j in range(m)]
    return build_hypergraph(n, edges)


def gen_hypertree(k: int, r: int, depth: int) -> tuple[Hypergraph, GroundTruth]:
    """Root-down ``k``-uniform, ``r``-regular, 1-intersecting hypertree.

    Every node of an edge above the last level is saturated to degree ``r``
    with child edges of ``k - 1`` fresh nodes. Edges on the last level are
    terminal; a depth-1 tree is a single isolated edge.
    """
    if k < 2 or r < 2 or depth < 1:
        raise ParameterError(f"hypertree needs k >= 2, r >= 2, depth >= 1, got k={k}, r={r}, depth={depth}")
    edges: list[list[int]] = [list(range(k))]
    levels = [1]
    degree = [1] * k
    frontier = [0]
    for level in range(1, depth):
        nxt = []
        for j in frontier:
            for v in edges[j]:
                while degree[v] < r:
                    start = len(degree)
                    child = [v] + list(range(start, start + k - 1))
                    degree.extend([1] * (k - 1))
                    degree[v] += 1
                    edges.append(child)
                    levels.append(level + 1)
                    nxt.append(len(edges) - 1)
        frontier = nxt
    if depth == 1:
        roles = (ISOLATED,)
    else:
        roles = tuple(TERMINAL if lv == depth else NON_TERMINAL for lv in levels)
    return build_hypergraph(len(degree), edges), GroundTruth(edge_roles=roles)


def gen_hypergrid(k: int) -> Hypergraph:
    """Rows and columns of a ``k x k`` lattice as ``2k`` hyperedges."""
    if k < 2:
        raise ParameterError(f"hypergrid needs k >= 2, got {k}")
    rows = [[i * k + j for j in range(k)] for i in range(k)]
    cols = [[i * k + j for i in range(k)] for j in range(k)]
    return build_hypergraph(k * k, rows + cols)


def gen_hsbm(block_sizes: Sequence[int], k: int, a: float, b: float, seed: int) -> tuple[Hypergraph, GroundTruth]:
    """Two-parameter ``k``-uniform hypergraph stochastic block model.

    Every ``k``-subset is visited in lexicographic order and kept with
    probability ``a`` if its nodes share a block, ``b`` otherwise. The
    uniform used for subset ``i`` is the ``i``-th draw of a Philox stream
    keyed by ``seed``, so the outcome for a subset does not depend on how the
    enumeration is chunked.
    """
    block_sizes = [int(x) for x in block_sizes]
    n = sum(block_sizes)
    if k < 2 or n < k:
        raise ParameterError(f"hsbm needs k >= 2 and sum(block_sizes) >= k, got k={k}, n={n}")
    if any(x < 0 for x in block_sizes):
        raise ParameterError("block sizes must be nonnegative")
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ParameterError(f"probabilities must lie in [0, 1], got a={a}, b={b}")
    labels = np.repeat(np.arange(len(block_sizes)), block_sizes)
    total = math.comb(n, k)
    subsets = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), k)), dtype=np.int64, count=total * k
    ).reshape(total, k)
    member_labels = labels[subsets]
    intra = np.all(member_labels == member_labels[:, :1], axis=1)
    u = _philox(seed).random(total)
    keep = u < np.where(intra, a, b)
    chosen = subsets[keep]
    flags = intra[keep]
    edge_labels = {j: ("intra" if f else "inter") for j, f in enumerate(flags)}
    H = build_hypergraph(n, chosen.tolist(), edge_labels=edge_labels)
    return H, GroundTruth(node_labels=labels, edge_intra=flags)


def gen_chung_lu(node_degrees: Sequence[int], edge_sizes: Sequence[int], seed: int) -> Hypergraph:
    """Chung-Lu style incidence sampling with matched volumes.

    Edges are filled in order; each draws its members without replacement
    with probability proportional to the nodes' remaining target degree.
    When fewer than ``d`` nodes have budget left, the rest of the edge is
    drawn proportionally to the original targets.
    """
    deg = np.asarray(node_degrees, dtype=np.int64)
    sizes = np.asarray(edge_sizes, dtype=np.int64)
    n = len(deg)
    if np.any(deg < 0):
        raise ParameterError("node degrees must be nonnegative")
    if np.any(sizes < 2):
        raise ParameterError("every edge size must be at least 2")
    if deg.sum() != sizes.sum():
        raise ParameterError(f"volume mismatch: sum of degrees {deg.sum()} != sum of edge sizes {sizes.sum()}")
    if len(sizes) and sizes.max() > n:
        raise ParameterError(f"edge size {sizes.max()} exceeds node count {n}")
    rng = _philox(seed)
    residual = deg.astype(float)
    base = deg.astype(float) if deg.sum() > 0 else np.ones(n)
    edges = []
    for d in sizes:
        d = int(d)
        positive = int(np.count_nonzero(residual > 0))
        if positive >= d:
            chosen = rng.choice(n, size=d, replace=False, p=residual / residual.sum())
        else:
            head = np.flatnonzero(residual > 0)
            rest_w = base.copy()
            rest_w[head] = 0.0
            if np.count_nonzero(rest_w) < d - len(head):
                rest_w = np.ones(n)
                rest_w[head] = 0.0
            tail = rng.choice(n, size=d - len(head), replace=False, p=rest_w / rest_w.sum())
            chosen = np.concatenate([head, tail])
        residual[chosen] = np.maximum(residual[chosen] - 1.0, 0.0)
        edges.append(sorted(int(v) for v in chosen))
    return build_hypergraph(n, edges)


def chung_lu_targets(m: int, n: int, dbar: int) -> tuple[np.ndarray, np.ndarray]:
    """Flat targets: ``m`` edges of size ``dbar`` and the volume split evenly over ``n`` nodes."""
    if m < 1 or n < 1:
        raise ParameterError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    if dbar < 2 or dbar > n:
        raise ParameterError(f"need 2 <= dbar <= n, got dbar={dbar}, n={n}")
    volume = m * dbar
    degrees = np.full(n, volume // n, dtype=np.int64)
    degrees[: volume % n] += 1
    return degrees, np.full(m, dbar, dtype=np.int64)


def closed_form_hlrc(family: str, params: dict, edge_role: str | None = None) -> float | None:
    """Exact HLRC of an edge in one of the special uniform families.

    Returns ``None`` for hypercycle parameter regimes without a known closed
    form. ``edge_role`` is only read for hypertrees.
    """
    if family == "complete":
        return 1.0
    if family == "hypergrid":
        return 0.0
    if family == "hypertree":
        k, r = params["k"], params["r"]
        if edge_role == NON_TERMINAL:
            return 2.0 / r - 1.0
        if edge_role == TERMINAL:
            return ((r + 1) * k - 2 * r) / (2 * r * (k - 1))
        if edge_role == ISOLATED:
            return 1.0
        raise ParameterError(f"unknown hypertree edge role {edge_role!r}")
    if family == "hypercycle":
        k, s, m = params["k"], params["s"], params["m"]
        if k > 2 * s:
            outer = 2 * k - 2 * s - 1 if m == 2 else 2 * k - s - 1
            return (k / 2 - 2 * s) / (k - 1) + (k / 2 + 2 * s - 1) / outer
        if k == 2 * s and m == 3:
            return 1.0
        if k == 2 * s and m >= 4:
            return (s - 1) / (3 * s - 1)
        if k == s + 1:
            return 1.0 if m < 2 * k else 0.0
        return None
    raise ParameterError(f"no closed form for family {family!r}")
