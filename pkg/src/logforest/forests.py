"""Brute-force spanning rooted forest enumeration.

This is the ground truth the matrix pipeline is checked against, so the
enumeration never touches a determinant or a matrix inverse: it walks the
lattice of edge subsets, keeps the acyclic ones, and tallies their weights.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EnumerationCapError, GraphError
from .graph import WeightedMultigraph, laplacian
from .linalg import invert_spd

ENUMERATION_CAP = 22
_CHUNK = 20000


@dataclass(frozen=True)
class ForestTally:
    """Forest weights of a multigraph.

    ``F[i, j]`` is the weight of spanning rooted forests in which vertex i+1
    belongs to a tree rooted at j+1; ``F_p[p]`` restricts that to forests
    with exactly p edges.  ``t`` is the total spanning-tree weight.
    """

    f: float
    F: np.ndarray
    F_p: np.ndarray
    t: float

    @property
    def n(self) -> int:
        return self.F.shape[0]

    @property
    def f_p_total(self) -> np.ndarray:
        """Total weight of rooted forests with p edges, for each p.

        Any row sum of ``F_p[p]`` gives it, since each rooted forest places
        a given vertex in exactly one tree with exactly one root.
        """
        return self.F_p[:, 0, :].sum(axis=1)


class _UnionFind:
    """Union by size with an undo log, no path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.log: list[tuple[int, int]] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.log.append((ra, rb))
        return True

    def undo(self) -> None:
        ra, rb = self.log.pop()
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]


def _spanning_forests(g: WeightedMultigraph):
    """Yield (edge count, weight, representative per vertex) for every spanning forest."""
    n = g.n
    edges = [(e.u - 1, e.v - 1, e.w) for e in g.edges]
    m = len(edges)
    uf = _UnionFind(n)

    def walk(k: int, count: int, weight: float):
        if k == m:
            yield count, weight, [uf.find(x) for x in range(n)]
            return
        yield from walk(k + 1, count, weight)
        u, v, w = edges[k]
        if uf.union(u, v):
            yield from walk(k + 1, count + 1, weight * w)
            uf.undo()

    yield from walk(0, 0, 1.0)


def _accumulate(F_p: np.ndarray, counts, weights, reps) -> float:
    p = np.asarray(counts)
    w = np.asarray(weights)
    R = np.asarray(reps)
    n = R.shape[1]
    same = R[:, :, None] == R[:, None, :]
    tree_size = same.sum(axis=2)
    is_root = R == np.arange(n)
    rootings = np.prod(np.where(is_root, tree_size, 1), axis=1).astype(float)
    # a tree holding i contributes a fixed root j, the rest keep all their rootings
    per_vertex = (w * rootings)[:, None] / tree_size
    contrib = same * per_vertex[:, :, None]
    for q in np.unique(p):
        F_p[q] += contrib[p == q].sum(axis=0)
    return float((w * rootings).sum())


def enumerate_rooted_forests(g: WeightedMultigraph, cap: int = ENUMERATION_CAP) -> ForestTally:
    if g.m > cap:
        raise EnumerationCapError(
            f"graph has {g.m} edge records; forest enumeration is limited to {cap}"
        )
    n = g.n
    F_p = np.zeros((n, n, n))
    f = 0.0
    t = 0.0
    buf: tuple[list, list, list] = ([], [], [])
    for count, weight, reps in _spanning_forests(g):
        buf[0].append(count)
        buf[1].append(weight)
        buf[2].append(reps)
        if count == n - 1:
            t += weight
        if len(buf[0]) >= _CHUNK:
            f += _accumulate(F_p, *buf)
            buf = ([], [], [])
    if buf[0]:
        f += _accumulate(F_p, *buf)
    return ForestTally(f=f, F=F_p.sum(axis=0), F_p=F_p, t=t)


@dataclass(frozen=True)
class ForestCheck:
    max_error: float
    tol: float
    tally: ForestTally
    kernel: np.ndarray

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol


def matrix_forest_check(g: WeightedMultigraph, tol: float = 1e-9) -> ForestCheck:
    """Compare ``f * (I + L)^-1`` with the enumerated forest matrix."""
    tally = enumerate_rooted_forests(g)
    q = invert_spd(np.eye(g.n) + laplacian(g))
    err = np.abs(tally.f * q - tally.F) / np.maximum(1.0, tally.F)
    return ForestCheck(max_error=float(err.max()), tol=tol, tally=tally, kernel=q)


def resistance_via_forests(g: WeightedMultigraph, tally: ForestTally | None = None) -> np.ndarray:
    """Resistance distances from forests with n - 2 edges and the tree weight."""
    if tally is None:
        tally = enumerate_rooted_forests(g)
    if tally.t <= 0:
        raise GraphError("graph is disconnected; it has no spanning tree")
    n = g.n
    X = tally.F_p[n - 2]
    d = np.diag(X)
    D = (d[:, None] + d[None, :] - 2 * X) / (n * tally.t)
    np.fill_diagonal(D, 0.0)
    return D
