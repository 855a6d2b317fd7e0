"""Exact 1-Wasserstein distance between finite discrete measures.

The solver is a transportation simplex: a spanning-tree basis over the
bipartite supply/demand graph, dual potentials from the tree, and pivots on
the most negative reduced cost. Degenerate stalls switch entering selection
to Bland's rule so the method always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASS_TOL = 1e-12
PRUNE_TOL = 1e-15
MAX_ORACLE_SUPPORT = 6


class TransportError(ValueError):
    pass


@dataclass(frozen=True)
class DiscreteMeasure:
    support: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        if len(self.support) != len(self.masses):
            raise TransportError("support and masses differ in length")
        if len(np.unique(self.support)) != len(self.support):
            raise TransportError("support ids must be distinct")
        if np.any(self.masses < 0):
            raise TransportError("masses must be nonnegative")
        if abs(float(np.sum(self.masses)) - 1.0) > MASS_TOL:
            raise TransportError(f"masses sum to {np.sum(self.masses)!r}, not 1")


@dataclass(frozen=True)
class TransportProblem:
    source: np.ndarray
    target: np.ndarray
    cost: np.ndarray

    @classmethod
    def from_measures(cls, mu: DiscreteMeasure, nu: DiscreteMeasure, cost: np.ndarray) -> "TransportProblem":
        return cls(mu.masses, nu.masses, cost)


@dataclass(frozen=True)
class TransportPlan:
    value: float
    plan: np.ndarray


def _check(source, target, cost, mass_tol):
    a = np.asarray(source, dtype=float)
    b = np.asarray(target, dtype=float)
    C = np.asarray(cost, dtype=float)
    if C.shape != (len(a), len(b)):
        raise TransportError(f"cost shape {C.shape} does not match supports ({len(a)}, {len(b)})")
    if not np.all(np.isfinite(C)):
        raise TransportError("cost matrix has non-finite entries")
    if np.any(a < 0) or np.any(b < 0):
        raise TransportError("masses must be nonnegative")
    if abs(a.sum() - b.sum()) > mass_tol:
        raise TransportError(f"mass mismatch: {a.sum()!r} vs {b.sum()!r}")
    return a, b, C


def solve_transport(source, target, cost, mass_tol: float = MASS_TOL) -> TransportPlan:
    """Optimal coupling of ``source`` and ``target`` under ``cost``.

    Returns the optimal value and the full ``len(source) x len(target)`` plan.
    """
    a, b, C = _check(source, target, cost, mass_tol)
    plan = np.zeros(C.shape)
    rows = np.flatnonzero(a > PRUNE_TOL)
    cols = np.flatnonzero(b > PRUNE_TOL)
    if len(rows) == 0 or len(cols) == 0:
        return TransportPlan(0.0, plan)
    a_r = a[rows]
    b_r = b[cols] * (a_r.sum() / b[cols].sum())
    sub = _transport_simplex(a_r, b_r, C[np.ix_(rows, cols)])
    plan[np.ix_(rows, cols)] = sub
    value = float(np.sum(sub * C[np.ix_(rows, cols)]))
    return TransportPlan(max(value, 0.0), plan)


def wasserstein1(p: TransportProblem) -> float:
    return solve_transport(p.source, p.target, p.cost).value


def _least_cost_start(a: np.ndarray, b: np.ndarray, C: np.ndarray):
    """Greedy cheapest-cell basis; retires exactly one line per step, so it spans."""
    p, q = len(a), len(b)
    ra, rb = a.copy(), b.copy()
    row_alive = [True] * p
    col_alive = [True] * q
    rows_left, cols_left = p, q
    flow = {}
    for flat in np.argsort(C, axis=None, kind="stable"):
        i, j = divmod(int(flat), q)
        if not (row_alive[i] and col_alive[j]):
            continue
        x = min(ra[i], rb[j])
        flow[(i, j)] = x
        ra[i] -= x
        rb[j] -= x
        if rows_left == 1 and cols_left == 1:
            break
        if rows_left == 1 or (cols_left > 1 and rb[j] <= ra[i]):
            col_alive[j] = False
            cols_left -= 1
        else:
            row_alive[i] = False
            rows_left -= 1
    return list(flow), flow


def _transport_simplex(a: np.ndarray, b: np.ndarray, C: np.ndarray, max_iter: int = 100_000) -> np.ndarray:
    p, q = C.shape
    basis, flow = _least_cost_start(a, b, C)
    scale = max(1.0, float(np.abs(C).max()))
    tol = 1e-12 * scale
    use_bland = False
    stall = 0

    for _ in range(max_iter):
        # tree adjacency: rows are nodes 0..p-1, columns p..p+q-1
        adj: list[list[int]] = [[] for _ in range(p + q)]
        for i, j in basis:
            adj[i].append(p + j)
            adj[p + j].append(i)

        u = np.zeros(p)
        v = np.zeros(q)
        seen = [False] * (p + q)
        seen[0] = True
        stack = [0]
        while stack:
            node = stack.pop()
            for nb in adj[node]:
                if seen[nb]:
                    continue
                seen[nb] = True
                if node < p:
                    v[nb - p] = C[node, nb - p] - u[node]
                else:
                    u[nb] = C[nb, node - p] - v[node - p]
                stack.append(nb)

        reduced = C - u[:, None] - v[None, :]
        if use_bland:
            neg = np.flatnonzero(reduced.ravel() < -tol)
            if len(neg) == 0:
                break
            flat = int(neg[0])
        else:
            flat = int(np.argmin(reduced))
            if reduced.flat[flat] >= -tol:
                break
        ei, ej = divmod(flat, q)

        # tree path from column ej back to row ei closes the pivot cycle
        parent = {p + ej: None}
        queue = [p + ej]
        while ei not in parent:
            node = queue.pop()
            for nb in adj[node]:
                if nb not in parent:
                    parent[nb] = node
                    queue.append(nb)
        path = []
        node = ei
        while parent[node] is not None:
            nxt = parent[node]
            path.append((node, nxt - p) if node < p else (nxt, node - p))
            node = nxt
        # path starts at row ei, so its cells alternate -, +, -, ... ending with -
        minus = path[0::2]
        plus = path[1::2]
        theta = min(flow[c] for c in minus)
        leaving = min((c for c in minus if flow[c] <= theta), key=lambda c: c[0] * q + c[1])

        if theta <= tol * 1e-3:
            stall += 1
            if stall > p + q:
                use_bland = True
        else:
            stall = 0
        for c in minus:
            flow[c] -= theta
        for c in plus:
            flow[c] += theta
        del flow[leaving]
        basis.remove(leaving)
        basis.append((ei, ej))
        flow[(ei, ej)] = theta
    else:
        raise TransportError("transport simplex did not converge")

    plan = np.zeros((p, q))
    for (i, j), x in flow.items():
        plan[i, j] = max(x, 0.0)
    return plan


def w1_oracle_small(p: TransportProblem) -> float:
    """Reference optimum from a generic LP solver; tests only, supports of size <= 6."""
    from scipy.optimize import linprog

    a, b, C = _check(p.source, p.target, p.cost, MASS_TOL)
    if len(a) > MAX_ORACLE_SUPPORT or len(b) > MAX_ORACLE_SUPPORT:
        raise TransportError(f"oracle limited to supports of size <= {MAX_ORACLE_SUPPORT}")
    rows, cols = len(a), len(b)
    A_eq = np.zeros((rows + cols, rows * cols))
    for i in range(rows):
        A_eq[i, i * cols:(i + 1) * cols] = 1.0
    for j in range(cols):
        A_eq[rows + j, j::cols] = 1.0
    b_eq = np.concatenate([a, b * (a.sum() / b.sum())])
    res = linprog(C.ravel(), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if not res.success:
        raise TransportError(f"LP oracle failed: {res.message}")
    return float(res.fun)
