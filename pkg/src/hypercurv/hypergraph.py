"""Immutable hypergraph, neighborhood index and clique-expansion distances."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

logger = logging.getLogger(__name__)

UNREACHABLE = -1

# Above this node count the per-node bitsets used for n_e would cost too much memory.
_BITSET_MAX_NODES = 32768


class HypergraphError(ValueError):
    """Raised when a hypergraph cannot be constructed from the given input."""


@dataclass(frozen=True)
class Hypergraph:
    """Unweighted, undirected hypergraph over dense node ids ``0..n-1``.

    Edges are stored in input order as sorted tuples. Repeated edges are kept.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]
    node_labels: Mapping[int, str] | None = None
    edge_labels: Mapping[int, str] | None = None
    duplicates_removed: int = field(default=0, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for e in self.edges:
            deg[list(e)] += 1
        return deg

    def edge_sizes(self) -> np.ndarray:
        return np.fromiter((len(e) for e in self.edges), dtype=np.int64, count=self.m)

    def edge_label(self, j: int) -> str | None:
        if self.edge_labels is None:
            return None
        return self.edge_labels.get(j)

    def node_token(self, v: int) -> str:
        if self.node_labels is not None and v in self.node_labels:
            return self.node_labels[v]
        return str(v)


def build_hypergraph(
    node_count: int,
    raw_edges: Iterable[Sequence[int]],
    node_labels: Mapping[int, str] | None = None,
    edge_labels: Mapping[int, str] | None = None,
) -> Hypergraph:
    """Validate ``raw_edges`` and freeze them into a :class:`Hypergraph`.

    Repeated ids inside one edge are dropped (and counted); an empty edge or an
    id outside ``[0, node_count)`` raises :class:`HypergraphError`.
    """
    if node_count < 0:
        raise HypergraphError(f"node count must be nonnegative, got {node_count}")
    edges = []
    dropped = 0
    for j, raw in enumerate(raw_edges):
        ids = [int(v) for v in raw]
        if not ids:
            raise HypergraphError(f"edge {j} is empty")
        for v in ids:
            if v < 0 or v >= node_count:
                raise HypergraphError(f"edge {j}: node id {v} out of range [0, {node_count})")
        unique = tuple(sorted(set(ids)))
        dropped += len(ids) - len(unique)
        edges.append(unique)
    if dropped:
        logger.warning("removed %d repeated node ids inside hyperedges", dropped)
    return Hypergraph(
        n=node_count,
        edges=tuple(edges),
        node_labels=dict(node_labels) if node_labels is not None else None,
        edge_labels=dict(edge_labels) if edge_labels is not None else None,
        duplicates_removed=dropped,
    )


@dataclass(frozen=True)
class NeighborhoodIndex:
    """Per-node and per-edge neighborhood statistics of a hypergraph.

    ``node_neighbors[v]`` is the sorted tuple of nodes co-occurring with ``v``
    (``v`` excluded); ``edge_common_neighbors[j]`` is the size of the
    intersection of those neighborhoods over the members of edge ``j``.
    """

    hypergraph: Hypergraph
    node_neighbors: tuple[tuple[int, ...], ...]
    node_degree: np.ndarray
    node_neighbor_count: np.ndarray
    edge_size: np.ndarray
    edge_common_neighbors: np.ndarray

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self.hypergraph.edges

    def common_neighbors(self, j: int) -> set[int]:
        """The set behind ``edge_common_neighbors[j]``, recomputed on demand."""
        members = self.hypergraph.edges[j]
        sets = sorted((set(self.node_neighbors[v]) for v in members), key=len)
        return set.intersection(*sets)


def build_neighborhood_index(H: Hypergraph) -> NeighborhoodIndex:
    n = H.n
    neighbor_sets: list[set[int]] = [set() for _ in range(n)]
    degree = np.zeros(n, dtype=np.int64)
    for e in H.edges:
        for v in e:
            degree[v] += 1
            neighbor_sets[v].update(e)
    for v in range(n):
        neighbor_sets[v].discard(v)
    neighbors = tuple(tuple(sorted(s)) for s in neighbor_sets)
    n_v = np.fromiter((len(s) for s in neighbor_sets), dtype=np.int64, count=n)
    edge_size = H.edge_sizes()

    if n <= _BITSET_MAX_NODES:
        n_e = _common_counts_bitset(H)
    else:
        n_e = _common_counts_sets(H, neighbor_sets)
    return NeighborhoodIndex(
        hypergraph=H,
        node_neighbors=neighbors,
        node_degree=degree,
        node_neighbor_count=n_v,
        edge_size=edge_size,
        edge_common_neighbors=n_e,
    )


def _common_counts_bitset(H: Hypergraph) -> np.ndarray:
    # one AND per member over n-bit masks keeps the per-edge cost independent of n_v
    masks = [0] * H.n
    for e in H.edges:
        emask = 0
        for v in e:
            emask |= 1 << v
        for v in e:
            masks[v] |= emask
    for v in range(H.n):
        masks[v] &= ~(1 << v)
    out = np.empty(H.m, dtype=np.int64)
    for j, e in enumerate(H.edges):
        acc = masks[e[0]]
        for v in e[1:]:
            acc &= masks[v]
        out[j] = acc.bit_count()
    return out


def _common_counts_sets(H: Hypergraph, neighbor_sets: Sequence[set[int]]) -> np.ndarray:
    out = np.empty(H.m, dtype=np.int64)
    for j, e in enumerate(H.edges):
        sets = sorted((neighbor_sets[v] for v in e), key=len)
        out[j] = len(set.intersection(*sets))
    return out


class DistanceOracle:
    """Unit-weight shortest paths on the clique expansion of a hypergraph.

    Single-source BFS results are cached per ``(source, cutoff)``; distances
    beyond the cutoff or to other components are :data:`UNREACHABLE`.
    """

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        self.adjacency = adjacency
        self.n = len(adjacency)
        self._cache: dict[tuple[int, int | None], dict[int, int]] = {}

    def distances_from(self, source: int, cutoff: int | None = None) -> dict[int, int]:
        key = (source, cutoff)
        found = self._cache.get(key)
        if found is not None:
            return found
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if cutoff is not None and du >= cutoff:
                continue
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        self._cache[key] = dist
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.distances_from(u).get(v, UNREACHABLE)

    def matrix(self) -> np.ndarray:
        """All-pairs distance matrix, ``UNREACHABLE`` for disconnected pairs."""
        out = np.full((self.n, self.n), UNREACHABLE, dtype=np.int64)
        for u in range(self.n):
            for v, d in self.distances_from(u).items():
                out[u, v] = d
        return out

    def clear_cache(self) -> None:
        self._cache.clear()


def clique_expansion(H: Hypergraph, index: NeighborhoodIndex | None = None) -> DistanceOracle:
    if index is None:
        index = build_neighborhood_index(H)
    return DistanceOracle(index.node_neighbors)
