"""Partition agreement scores and the Wilcoxon rank-sum test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln
from scipy.stats import norm


@dataclass(frozen=True)
class ClusterScores:
    ari: float
    ami: float
    contingency: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray


def contingency_table(x: Sequence, y: Sequence) -> np.ndarray:
    if len(x) != len(y):
        raise ValueError(f"label sequences differ in length: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValueError("need at least two labelled items")
    _, xi = np.unique(np.asarray(x), return_inverse=True)
    _, yi = np.unique(np.asarray(y), return_inverse=True)
    table = np.zeros((xi.max() + 1, yi.max() + 1), dtype=np.int64)
    np.add.at(table, (xi, yi), 1)
    return table


def _comb2(v):
    v = np.asarray(v, dtype=np.int64)
    return v * (v - 1) // 2


def _same_partition(table: np.ndarray) -> bool:
    # identical up to relabeling: every row and column has a single nonzero cell
    nz = table > 0
    return bool(np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1))


def adjusted_rand_index(x: Sequence, y: Sequence) -> float:
    """Pair-counting agreement corrected for chance.

    When both chance-corrected denominators vanish (both partitions are the
    same trivial partition) the score is 1 by convention.
    """
    table = contingency_table(x, y)
    n = int(table.sum())
    sum_ij = int(_comb2(table).sum())
    sum_a = int(_comb2(table.sum(axis=1)).sum())
    sum_b = int(_comb2(table.sum(axis=0)).sum())
    pairs = n * (n - 1) // 2
    # scaled by 2 * pairs so both sides stay integral; one rounding at the end
    num = 2 * (sum_ij * pairs - sum_a * sum_b)
    denom = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b
    if denom == 0:
        return 1.0 if _same_partition(table) else 0.0
    return num / denom


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-np.sum(p * np.log(p)))


def mutual_information(table: np.ndarray) -> float:
    n = table.sum()
    a = table.sum(axis=1)
    b = table.sum(axis=0)
    i, j = np.nonzero(table)
    nij = table[i, j].astype(float)
    return float(np.sum(nij / n * np.log(nij * n / (a[i].astype(float) * b[j]))))


def expected_mutual_information(table: np.ndarray) -> float:
    """Mean MI over all labelings with the same cluster sizes (hypergeometric model)."""
    n = int(table.sum())
    a = table.sum(axis=1).astype(np.int64)
    b = table.sum(axis=0).astype(np.int64)
    lg_n = gammaln(n + 1)
    total = 0.0
    for ai in a:
        for bj in b:
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if lo > hi:
                continue
            nij = np.arange(lo, hi + 1, dtype=float)
            log_p = (
                gammaln(ai + 1) + gammaln(bj + 1) + gammaln(n - ai + 1) + gammaln(n - bj + 1)
                - lg_n - gammaln(nij + 1) - gammaln(ai - nij + 1) - gammaln(bj - nij + 1)
                - gammaln(n - ai - bj + nij + 1)
            )
            total += float(np.sum(nij / n * np.log(n * nij / (ai * bj)) * np.exp(log_p)))
    return total


def adjusted_mutual_info(x: Sequence, y: Sequence) -> float:
    """Chance-corrected mutual information with arithmetic-mean entropy normalization."""
    table = contingency_table(x, y)
    n = int(table.sum())
    h_x = _entropy(table.sum(axis=1), n)
    h_y = _entropy(table.sum(axis=0), n)
    mi = mutual_information(table)
    emi = expected_mutual_information(table)
    denom = 0.5 * (h_x + h_y) - emi
    if abs(denom) < 1e-15:
        return 1.0 if _same_partition(table) else 0.0
    return (mi - emi) / denom


def cluster_scores(truth: Sequence, labels: Sequence) -> ClusterScores:
    table = contingency_table(truth, labels)
    return ClusterScores(
        ari=adjusted_rand_index(truth, labels),
        ami=adjusted_mutual_info(truth, labels),
        contingency=table,
        row_sums=table.sum(axis=1),
        col_sums=table.sum(axis=0),
    )


@dataclass(frozen=True)
class RankSumResult:
    statistic: float
    p_value: float
    n_a: int
    n_b: int


def midranks(values: np.ndarray) -> np.ndarray:
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values))
    sorted_vals = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def _exact_u_pvalue(u: float, n1: int, n2: int) -> float:
    # counts[k] = number of rank subsets of size n1 with U == k (tie-free)
    counts = np.zeros((n1 + 1, n1 * n2 + 1), dtype=object)
    counts[0, 0] = 1
    for t in range(1, n1 + n2 + 1):
        for size in range(min(t, n1), 0, -1):
            # adding item t to the a-sample contributes (t - size) b-items below it
            shift = t - size
            if shift > n2:
                continue
            counts[size, shift:] = counts[size, shift:] + counts[size - 1, : n1 * n2 + 1 - shift]
    dist = counts[n1]
    total = math.comb(n1 + n2, n1)
    mean = n1 * n2 / 2
    dev = abs(u - mean)
    extreme = sum(int(dist[k]) for k in range(len(dist)) if abs(k - mean) >= dev - 1e-9)
    return min(1.0, extreme / total)


def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float], method: str = "asymptotic") -> RankSumResult:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney U) test.

    ``statistic`` is U for sample ``a``. The default p-value uses the normal
    approximation with tie and continuity corrections; ``method="exact"``
    enumerates the permutation distribution and requires tie-free data.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n1, n2 = len(a), len(b)
    if n1 == 0 or n2 == 0:
        raise ValueError("both samples must be nonempty")
    ranks = midranks(np.concatenate([a, b]))
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2)
    if method == "exact":
        if len(np.unique(np.concatenate([a, b]))) != n1 + n2:
            raise ValueError("exact p-value requires tie-free samples")
        return RankSumResult(u, _exact_u_pvalue(u, n1, n2), n1, n2)
    if method != "asymptotic":
        raise ValueError(f"unknown method {method!r}")
    N = n1 + n2
    _, ties = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(ties.astype(float) ** 3 - ties)) / (N * (N - 1))
    var = n1 * n2 / 12.0 * ((N + 1) - tie_term)
    if var <= 0:
        return RankSumResult(u, 1.0, n1, n2)
    z = (abs(u - n1 * n2 / 2.0) - 0.5) / math.sqrt(var)
    p = 2.0 * norm.sf(max(z, 0.0))
    return RankSumResult(u, float(min(1.0, p)), n1, n2)
