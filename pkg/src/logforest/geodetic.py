"""Vertex separation and the graph-geodetic check.

A distance is graph-geodetic when ``d(i,j) + d(j,k) = d(i,k)`` holds exactly
for the triples where every i-k path passes through j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GraphError
from .graph import WeightedMultigraph, connected_components, remove_vertex


def _component_index(g: WeightedMultigraph) -> list[int]:
    label = [0] * (g.n + 1)
    for c, comp in enumerate(connected_components(g)):
        for v in comp:
            label[v] = c
    return label


def separates(g: WeightedMultigraph, i: int, j: int, k: int) -> bool:
    """True if every path from i to k contains j.

    Endpoints count as contained.  When i and k are already disconnected the
    statement holds vacuously.
    """
    for v in (i, j, k):
        if not 1 <= v <= g.n:
            raise GraphError(f"vertex {v} out of range 1..{g.n}")
    if i == k:
        raise ValueError("separation is undefined for i == k")
    if j in (i, k):
        return True
    label = _component_index(g)
    if label[i] != label[k]:
        return True
    h, relabel = remove_vertex(g, j)
    hlabel = _component_index(h)
    return hlabel[relabel[i]] != hlabel[relabel[k]]


def separation_table(g: WeightedMultigraph) -> np.ndarray:
    """Boolean array ``S[i, j, k]`` (0-based) of :func:`separates` for i != k.

    Computes one vertex deletion per j instead of one per triple.
    """
    n = g.n
    S = np.zeros((n, n, n), dtype=bool)
    base = np.array(_component_index(g)[1:])
    apart = base[:, None] != base[None, :]
    for j in range(1, n + 1):
        if n >= 3:
            h, relabel = remove_vertex(g, j)
            hl = _component_index(h)
            lab = np.array([hl[relabel[v]] if v != j else -1 for v in range(1, n + 1)])
            S[:, j - 1, :] = (lab[:, None] != lab[None, :]) | apart
        S[j - 1, j - 1, :] = True
        S[:, j - 1, j - 1] = True
    return S


@dataclass
class GeodeticReport:
    triples_checked: int = 0
    equality_triples: list[tuple[int, int, int]] = field(default_factory=list)
    separation_triples: list[tuple[int, int, int]] = field(default_factory=list)
    mismatches: list[tuple[int, int, int, float, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def default_tolerance(D: np.ndarray) -> float:
    finite = D[np.isfinite(D)]
    return 1e-9 * (1.0 + (finite.max() if finite.size else 0.0))


def verify_geodetic(
    g: WeightedMultigraph,
    D: np.ndarray,
    tol: float | None = None,
    directions: str = "both",
) -> GeodeticReport:
    """Check equality triples against separation triples.

    Only triples with i != k, j not in {i, k} and all three distances finite
    are examined, in lexicographic order.  ``directions="if"`` only flags
    separation without equality (the "only if" half is not checked).
    """
    D = np.asarray(D, dtype=float)
    if D.shape != (g.n, g.n):
        raise ValueError(f"distance matrix shape {D.shape} does not match n = {g.n}")
    if directions not in ("both", "if"):
        raise ValueError("directions must be 'both' or 'if'")
    if tol is None:
        tol = default_tolerance(D)
    S = separation_table(g)
    report = GeodeticReport()
    n = g.n
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                dij, djk, dik = D[i, j], D[j, k], D[i, k]
                if not (np.isfinite(dij) and np.isfinite(djk) and np.isfinite(dik)):
                    continue
                report.triples_checked += 1
                residual = abs(dij + djk - dik)
                equal = residual <= tol
                sep = bool(S[i, j, k])
                triple = (i + 1, j + 1, k + 1)
                if equal:
                    report.equality_triples.append(triple)
                if sep:
                    report.separation_triples.append(triple)
                if sep and not equal:
                    report.mismatches.append((*triple, residual, "separation without equality"))
                elif equal and not sep and directions == "both":
                    report.mismatches.append((*triple, residual, "equality without separation"))
    return report
