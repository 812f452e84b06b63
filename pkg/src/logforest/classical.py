"""Shortest-path, weighted shortest-path and resistance distances.

All functions return dense ``n x n`` float arrays with ``inf`` between
vertices of different components.
"""

from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from .graph import WeightedMultigraph, connected_components, induced_subgraph, laplacian
from .linalg import laplacian_pseudoinverse


def shortest_path_matrix(g: WeightedMultigraph) -> np.ndarray:
    """Hop-count distances by breadth-first search from every vertex."""
    adj = g.neighbors()
    D = np.full((g.n, g.n), np.inf)
    for s in range(1, g.n + 1):
        D[s - 1, s - 1] = 0.0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if D[s - 1, y - 1] == np.inf:
                    D[s - 1, y - 1] = D[s - 1, x - 1] + 1
                    queue.append(y)
    return D


def _min_resistance_adjacency(g: WeightedMultigraph) -> list[dict[int, float]]:
    adj: list[dict[int, float]] = [{} for _ in range(g.n + 1)]
    for e in g.edges:
        r = e.resistance
        if r < adj[e.u].get(e.v, np.inf):
            adj[e.u][e.v] = r
            adj[e.v][e.u] = r
    return adj


def weighted_shortest_path_matrix(g: WeightedMultigraph) -> np.ndarray:
    """Minimum total edge resistance ``1/w`` over paths (Dijkstra per source)."""
    adj = _min_resistance_adjacency(g)
    D = np.full((g.n, g.n), np.inf)
    for s in range(1, g.n + 1):
        dist = D[s - 1]
        dist[s - 1] = 0.0
        done = set()
        heap = [(0.0, s)]
        while heap:
            d, x = heapq.heappop(heap)
            if x in done:
                continue
            done.add(x)
            for y, r in adj[x].items():
                nd = d + r
                if nd < dist[y - 1]:
                    dist[y - 1] = nd
                    heapq.heappush(heap, (nd, y))
    return D


def resistance_matrix(g: WeightedMultigraph) -> np.ndarray:
    """Effective resistance with edge weights as conductances.

    Each connected component is handled separately through the Laplacian
    pseudoinverse; parallel edges combine through the Laplacian's summed
    weights.
    """
    D = np.full((g.n, g.n), np.inf)
    for comp in connected_components(g):
        idx = np.array(comp) - 1
        if len(comp) == 1:
            D[idx[0], idx[0]] = 0.0
            continue
        sub, _ = induced_subgraph(g, comp)
        X = laplacian_pseudoinverse(laplacian(sub))
        x = np.diag(X)
        block = x[:, None] + x[None, :] - 2 * X
        np.fill_diagonal(block, 0.0)
        D[np.ix_(idx, idx)] = block
    return D


def metric_violations(D: np.ndarray, tol: float | None = None) -> list[str]:
    """Describe every metric-axiom failure of ``D`` (empty list if none).

    ``tol`` defaults to ``1e-9 * (1 + max finite entry)``.  Off-diagonal
    finite entries must exceed ``10 * tol``; ``inf`` entries are exempt from
    the triangle check.
    """
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    finite = np.isfinite(D)
    scale = 1.0 + (D[finite].max() if finite.any() else 0.0)
    if tol is None:
        tol = 1e-9 * scale
    out = []
    if np.isnan(D).any():
        out.append("matrix contains NaN")
        return out
    if np.abs(np.diag(D)).max() > tol:
        out.append(f"nonzero diagonal (max {np.abs(np.diag(D)).max():.3g})")
    with np.errstate(invalid="ignore"):
        asym = np.abs(np.where(finite & finite.T, D - D.T, 0.0)).max()
    if asym > tol or (finite != finite.T).any():
        out.append(f"asymmetric (max |d_ij - d_ji| = {asym:.3g})")
    off = ~np.eye(n, dtype=bool) & finite
    if off.any() and D[off].min() <= 10 * tol:
        i, j = np.argwhere(off & (D <= 10 * tol))[0]
        out.append(f"d({i + 1},{j + 1}) = {D[i, j]:.3g} is not bounded away from 0")
    # d_ij + d_jk - d_ik over all triples
    with np.errstate(invalid="ignore"):
        slack = D[:, :, None] + D[None, :, :] - D[:, None, :]
    # inf - inf is undefined and skipped; finite + finite - inf is a real failure
    slack = np.where(np.isnan(slack), 0.0, slack)
    if slack.min() < -tol:
        i, j, k = np.unravel_index(np.argmin(slack), slack.shape)
        out.append(
            f"triangle inequality fails for ({i + 1},{j + 1},{k + 1}) by {-slack[i, j, k]:.3g}"
        )
    return out
