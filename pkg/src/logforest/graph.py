"""Weighted multigraphs, edge-list I/O, Laplacians and edge-weight transforms.

Vertices are numbered 1..n.  Parallel edges are kept as separate records so
that forest enumeration can treat them as distinct objects; matrix builders
sum them into total weights.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GraphError, GraphFormatError, TransformError

# Smallest transformed weight we accept; anything below is reported as underflow.
MIN_WEIGHT = 1e-300


class Edge(NamedTuple):
    u: int
    v: int
    w: float = 1.0

    @property
    def resistance(self) -> float:
        return 1.0 / self.w


@dataclass(frozen=True)
class WeightedMultigraph:
    """Undirected loopless multigraph with strictly positive edge weights."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise GraphError(f"vertex count must be an integer >= 2, got {self.n!r}")
        checked = []
        for e in self.edges:
            u, v, w = (e.u, e.v, e.w) if isinstance(e, Edge) else e
            u, v, w = int(u), int(v), float(w)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 1..{self.n}")
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            if not (w > 0 and math.isfinite(w)):
                raise GraphError(f"edge ({u}, {v}) has nonpositive or non-finite weight {w}")
            checked.append(Edge(u, v, w))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(checked))

    @property
    def m(self) -> int:
        """Number of edge records, parallel edges counted separately."""
        return len(self.edges)

    def multiplicity(self, i: int, j: int) -> int:
        pair = {i, j}
        return sum(1 for e in self.edges if {e.u, e.v} == pair)

    def neighbors(self) -> list[set[int]]:
        """Adjacency sets indexed by vertex id (index 0 unused)."""
        adj: list[set[int]] = [set() for _ in range(self.n + 1)]
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def with_weights(self, weights) -> WeightedMultigraph:
        return WeightedMultigraph(
            self.n, tuple(Edge(e.u, e.v, float(w)) for e, w in zip(self.edges, weights))
        )


# ---------------------------------------------------------------------------
# Edge-list format
# ---------------------------------------------------------------------------

def parse_edge_list(text: str | bytes) -> WeightedMultigraph:
    """Read a graph from edge-list text.

    The first non-comment line holds the vertex count; every later line is
    ``u v [w]`` with a default weight of 1.0.  ``#`` starts a comment.
    Repeated pairs become parallel edges.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise GraphFormatError("expected a single vertex count", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise GraphFormatError(f"vertex count {fields[0]!r} is not an integer", lineno) from None
            if n < 2:
                raise GraphFormatError(f"vertex count must be >= 2, got {n}", lineno)
            continue
        if len(fields) not in (2, 3):
            raise GraphFormatError(f"expected 'u v [w]', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
            w = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError:
            raise GraphFormatError(f"cannot parse {line!r}", lineno) from None
        if u == v:
            raise GraphFormatError(f"loop edge at vertex {u}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex id out of range 1..{n} in {line!r}", lineno)
        if not (w > 0 and math.isfinite(w)):
            raise GraphFormatError(f"weight must be positive and finite, got {w}", lineno)
        edges.append(Edge(u, v, w))
    if n is None:
        raise GraphFormatError("missing vertex count")
    return WeightedMultigraph(n, tuple(edges))


def format_edge_list(g: WeightedMultigraph) -> str:
    lines = [str(g.n)]
    lines += [f"{e.u} {e.v} {e.w!r}" for e in g.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def total_weight_matrix(g: WeightedMultigraph) -> np.ndarray:
    """Symmetric matrix of summed parallel-edge weights, zero diagonal."""
    W = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        W[u - 1, v - 1] += w
        W[v - 1, u - 1] += w
    return W


def laplacian(g: WeightedMultigraph) -> np.ndarray:
    W = total_weight_matrix(g)
    return np.diag(W.sum(axis=1)) - W


# ---------------------------------------------------------------------------
# Edge-weight transforms G -> G_alpha
# ---------------------------------------------------------------------------

class Transform(str, enum.Enum):
    """Edge-weight maps psi_alpha(r) applied to each edge resistance r = 1/w."""

    LINEAR = "linear"          # alpha / r, i.e. w * alpha
    POWER = "power"            # alpha ** r
    EXP_SCALED = "exp-scaled"  # (alpha / r) * exp(-r / alpha)
    EXP = "exp"                # exp(-r / alpha)

    def psi(self, alpha: float, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(over="ignore", under="ignore"):
            if self is Transform.LINEAR:
                return alpha / r
            if self is Transform.POWER:
                return np.power(alpha, r)
            if self is Transform.EXP_SCALED:
                return (alpha / r) * np.exp(-r / alpha)
            return np.exp(-r / alpha)

    def admissible(self, alpha: float) -> bool:
        """Whether psi decreases in r and vanishes as r grows at this alpha."""
        if self is Transform.POWER:
            return 0 < alpha < 1
        return alpha > 0


class InadmissibleTransformWarning(UserWarning):
    pass


def transform_weights(g: WeightedMultigraph, transform, alpha: float) -> WeightedMultigraph:
    """Return G_alpha: same vertices and edge records, weights psi_alpha(1/w).

    ``transform`` is a :class:`Transform` or anything with a ``transform``
    attribute (e.g. a family config).
    """
    transform = Transform(getattr(transform, "transform", transform))
    if not alpha > 0 or not math.isfinite(alpha):
        raise ValueError(f"alpha must be positive and finite, got {alpha}")
    if not transform.admissible(alpha):
        warnings.warn(
            f"{transform.value} transform is not monotone-admissible at alpha={alpha}",
            InadmissibleTransformWarning,
            stacklevel=2,
        )
    r = np.array([e.resistance for e in g.edges])
    new = transform.psi(alpha, r)
    bad = ~np.isfinite(new) | (new < MIN_WEIGHT)
    if bad.any():
        e = g.edges[int(np.argmax(bad))]
        raise TransformError(
            f"{transform.value} transform at alpha={alpha} maps weight {e.w} of edge "
            f"({e.u}, {e.v}) to {float(new[bad][0])!r}; choose a different alpha"
        )
    return g.with_weights(new)


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def connected_components(g: WeightedMultigraph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    adj = g.neighbors()
    seen = [False] * (g.n + 1)
    comps = []
    for s in range(1, g.n + 1):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedMultigraph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: WeightedMultigraph, vertices) -> tuple[WeightedMultigraph, dict[int, int]]:
    """Subgraph on ``vertices`` relabeled 1..k in increasing order.

    Returns the subgraph and the map old id -> new id.
    """
    keep = sorted(set(vertices))
    relabel = {old: new for new, old in enumerate(keep, start=1)}
    edges = tuple(
        Edge(relabel[e.u], relabel[e.v], e.w)
        for e in g.edges
        if e.u in relabel and e.v in relabel
    )
    return WeightedMultigraph(len(keep), edges), relabel


def remove_vertex(g: WeightedMultigraph, j: int) -> tuple[WeightedMultigraph, dict[int, int]]:
    if g.n < 3:
        raise GraphError("cannot remove a vertex from a graph with fewer than 3 vertices")
    if not 1 <= j <= g.n:
        raise GraphError(f"vertex {j} out of range 1..{g.n}")
    return induced_subgraph(g, [v for v in range(1, g.n + 1) if v != j])


# ---------------------------------------------------------------------------
# Small constructors used by tests and examples
# ---------------------------------------------------------------------------

def path_graph(n: int, w: float = 1.0) -> WeightedMultigraph:
    return WeightedMultigraph(n, tuple(Edge(i, i + 1, w) for i in range(1, n)))


def cycle_graph(n: int, w: float = 1.0) -> WeightedMultigraph:
    return WeightedMultigraph(n, path_graph(n, w).edges + (Edge(n, 1, w),))


def complete_graph(n: int, w: float = 1.0) -> WeightedMultigraph:
    return WeightedMultigraph(
        n, tuple(Edge(i, j, w) for i in range(1, n + 1) for j in range(i + 1, n + 1))
    )


def star_graph(n: int, w: float = 1.0) -> WeightedMultigraph:
    """Star with center 1 and n - 1 leaves."""
    return WeightedMultigraph(n, tuple(Edge(1, j, w) for j in range(2, n + 1)))


def random_multigraph(
    rng: np.random.Generator,
    n: int,
    m: int,
    weight_range: tuple[float, float] = (0.1, 10.0),
    connected: bool = True,
) -> WeightedMultigraph:
    """Random multigraph with ``m`` edge records (parallel edges allowed).

    With ``connected=True`` the first n - 1 records form a random spanning
    tree, so ``m`` must be at least n - 1.
    """
    lo, hi = weight_range
    pairs = []
    if connected:
        if m < n - 1:
            raise ValueError("a connected graph needs at least n - 1 edges")
        order = rng.permutation(n) + 1
        for k in range(1, n):
            pairs.append((int(order[k]), int(order[rng.integers(k)])))
    while len(pairs) < m:
        u, v = rng.choice(n, size=2, replace=False) + 1
        pairs.append((int(u), int(v)))
    weights = rng.uniform(lo, hi, size=len(pairs))
    return WeightedMultigraph(n, tuple(Edge(u, v, float(w)) for (u, v), w in zip(pairs, weights)))
