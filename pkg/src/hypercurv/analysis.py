"""Curvature-histogram clustering of hypergraph collections.

Pipeline: per-hypergraph curvature -> normalized histogram -> RBF kernel ->
two-component kernel PCA -> k-means, optionally scored against ground truth.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .curvature import compute
from .hypergraph import Hypergraph
from .scores import ClusterScores, cluster_scores

logger = logging.getLogger(__name__)

BIN_WIDTH = 0.05
RANGES = {"hlrc": (-1.0, 1.0), "horc": (-2.0, 1.0)}


@dataclass(frozen=True)
class CurvatureHistogram:
    method: str
    edges: np.ndarray
    frequencies: np.ndarray
    empty: bool = False


@dataclass(frozen=True)
class KernelMatrix:
    values: np.ndarray
    gamma: float


@dataclass(frozen=True)
class Embedding2D:
    points: np.ndarray
    eigenvalues: np.ndarray


def bin_edges(method: str) -> np.ndarray:
    if method not in RANGES:
        raise ValueError(f"no histogram range for method {method!r}; expected one of {tuple(RANGES)}")
    lo, hi = RANGES[method]
    bins = int(round((hi - lo) / BIN_WIDTH))
    return np.linspace(lo, hi, bins + 1)


def curvature_histogram(values: Sequence[float], method: str) -> CurvatureHistogram:
    """Normalized counts over half-open bins ``(lo, hi]``; the lowest bin is closed."""
    edges = bin_edges(method)
    vals = np.asarray(values, dtype=float)
    vals = vals[~np.isnan(vals)]
    bins = len(edges) - 1
    if len(vals) == 0:
        return CurvatureHistogram(method, edges, np.zeros(bins), empty=True)
    lo, hi = edges[0], edges[-1]
    if vals.min() < lo - 1e-9 or vals.max() > hi + 1e-9:
        raise ValueError(f"{method} values outside [{lo}, {hi}]: min {vals.min()}, max {vals.max()}")
    idx = np.clip(np.searchsorted(edges, vals, side="left") - 1, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins).astype(float)
    return CurvatureHistogram(method, edges, counts / counts.sum())


def rbf_kernel(G: Sequence[Sequence[float]]) -> KernelMatrix:
    """``exp(-||G_i - G_j||^2 / B)`` for the rows of an ``N x B`` histogram matrix."""
    try:
        G = np.asarray(G, dtype=float)
    except ValueError as exc:
        raise ValueError("histogram rows must all have the same length") from exc
    if G.ndim != 2:
        raise ValueError("histogram rows must all have the same length")
    gamma = 1.0 / G.shape[1]
    diff = G[:, None, :] - G[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    K = np.exp(-gamma * sq)
    K = 0.5 * (K + K.T)
    np.fill_diagonal(K, 1.0)
    return KernelMatrix(K, gamma)


def _center(K: np.ndarray) -> np.ndarray:
    row = K.mean(axis=0, keepdims=True)
    col = K.mean(axis=1, keepdims=True)
    Kc = K - row - col + K.mean()
    return 0.5 * (Kc + Kc.T)


def kpca_2d(K: KernelMatrix | np.ndarray, backend: str = "dense", tol: float = 1e-5, max_iter: int = 2000) -> Embedding2D:
    """Two-component kernel PCA on a precomputed kernel.

    ``backend="dense"`` runs a full symmetric eigendecomposition. ``"arpack"``
    uses an implicitly restarted Lanczos solver with the given tolerance and
    iteration cap. Scores are eigenvectors scaled by the square root of their
    eigenvalue; each column is flipped so its largest-magnitude entry is
    nonnegative. Components without a positive eigenvalue are zero.
    """
    values = K.values if isinstance(K, KernelMatrix) else np.asarray(K, dtype=float)
    N = values.shape[0]
    Kc = _center(values)
    if backend == "dense":
        lam, vec = np.linalg.eigh(Kc)
    elif backend == "arpack":
        from scipy.sparse.linalg import eigsh

        if N <= 2:
            lam, vec = np.linalg.eigh(Kc)
        else:
            lam, vec = eigsh(Kc, k=2, which="LA", tol=tol, maxiter=max_iter, v0=np.ones(N))
    else:
        raise ValueError(f"unknown kPCA backend {backend!r}")
    order = np.argsort(lam)[::-1][:2]
    lam, vec = lam[order], vec[:, order]
    cutoff = 1e-10 * max(1.0, float(np.abs(values).max()) * N)
    points = np.zeros((N, 2))
    kept = np.zeros(2)
    for c in range(min(2, len(lam))):
        if lam[c] <= cutoff:
            logger.info("kPCA component %d has no positive eigenvalue; left at zero", c + 1)
            continue
        col = vec[:, c] * np.sqrt(lam[c])
        if col[np.argmax(np.abs(col))] < 0:
            col = -col
        points[:, c] = col
        kept[c] = lam[c]
    return Embedding2D(points, kept)


def _canonical(labels: np.ndarray) -> np.ndarray:
    # relabel clusters in order of first appearance
    mapping: dict[int, int] = {}
    out = np.empty(len(labels), dtype=np.int64)
    for i, lab in enumerate(labels):
        out[i] = mapping.setdefault(int(lab), len(mapping))
    return out


def _kmeans_pp(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    N = len(X)
    centers = [X[rng.integers(N)]]
    d2 = np.sum((X - centers[0]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        idx = rng.integers(N) if total <= 0 else rng.choice(N, p=d2 / total)
        centers.append(X[idx])
        d2 = np.minimum(d2, np.sum((X - X[idx]) ** 2, axis=1))
    return np.array(centers)


def _lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int = 300) -> tuple[np.ndarray, float]:
    k = len(centers)
    labels = np.zeros(len(X), dtype=np.int64)
    for it in range(max_iter):
        d2 = np.sum((X[:, None, :] - centers[None, :, :]) ** 2, axis=2)
        new = np.argmin(d2, axis=1)
        for c in range(k):
            if not np.any(new == c):
                # reseed an empty cluster at the point farthest from its own center
                far = int(np.argmax(d2[np.arange(len(X)), new]))
                new[far] = c
                d2[far, :] = 0.0
        if it > 0 and np.array_equal(new, labels):
            break
        labels = new
        centers = np.array([X[labels == c].mean(axis=0) for c in range(k)])
    inertia = float(np.sum((X - centers[labels]) ** 2))
    return labels, inertia


def kmeans(points: np.ndarray, k: int, seed: int = 0, restarts: int = 10) -> np.ndarray:
    """Lloyd's algorithm from k-means++ seeds; best inertia of ``restarts`` runs.

    Labels are renumbered by first appearance so equal partitions compare equal.
    """
    X = np.asarray(points, dtype=float)
    if k < 1 or k > len(X):
        raise ValueError(f"k must lie in [1, {len(X)}], got {k}")
    rng = np.random.default_rng(seed)
    best_labels, best_inertia = None, np.inf
    for _ in range(restarts):
        labels, inertia = _lloyd(X, _kmeans_pp(X, k, rng))
        if inertia < best_inertia - 1e-12:
            best_labels, best_inertia = labels, inertia
    return _canonical(best_labels)


@dataclass(frozen=True)
class PipelineResult:
    histograms: np.ndarray
    kernel: KernelMatrix
    embedding: Embedding2D
    labels: np.ndarray
    scores: ClusterScores | None


def histogram_matrix(collection: Sequence[Hypergraph], method: str, threads: int = 1) -> np.ndarray:
    rows = []
    for H in collection:
        curv = compute(H, method, threads=threads)
        rows.append(curvature_histogram(curv.valid(), method).frequencies)
    return np.vstack(rows)


def cluster_pipeline(
    collection: Sequence[Hypergraph],
    method: str = "hlrc",
    k: int = 2,
    seed: int = 0,
    truth: Sequence | None = None,
    threads: int = 1,
    backend: str = "dense",
) -> PipelineResult:
    if len(collection) == 0:
        raise ValueError("empty hypergraph collection")
    G = histogram_matrix(collection, method, threads=threads)
    K = rbf_kernel(G)
    emb = kpca_2d(K, backend=backend)
    labels = kmeans(emb.points, k, seed=seed)
    scores = None
    if truth is not None:
        if len(truth) != len(collection):
            raise ValueError("ground truth length does not match the collection")
        if len(labels) >= 2:
            scores = cluster_scores(truth, labels)
        else:
            # one item is trivially placed correctly
            scores = ClusterScores(1.0, 1.0, np.ones((1, 1), dtype=np.int64), np.ones(1), np.ones(1))
    return PipelineResult(G, K, emb, labels, scores)
