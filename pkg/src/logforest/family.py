"""Logarithmic forest distances and the ordinary forest distance.

A family member is fixed by a :class:`FamilyConfig` (edge transform,
H-matrix variant, scaling rule for gamma) and a parameter ``alpha > 0``.
The pipeline is::

    Q = (I + L(G_alpha))^-1
    H = c(alpha) * ln Q          (entrywise)
    d_ij = (h_ii + h_jj) / 2 - h_ij

with ``c = gamma*(alpha-1)/ln(alpha)`` (``gamma`` at alpha == 1) for the
standard variant and ``c = gamma*alpha`` for the alpha-ln variant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import (
    Transform,
    WeightedMultigraph,
    connected_components,
    induced_subgraph,
    laplacian,
    transform_weights,
)
from .linalg import elementwise_log, invert_spd


class HVariant(str, enum.Enum):
    STANDARD = "standard"
    ALPHA_LN = "alpha-ln"


# ---------------------------------------------------------------------------
# Scaling rules for gamma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Formula13:
    """gamma = ln(e + alpha^(2/n)): tends to 1 as alpha -> 0 and to (2/n) ln alpha as alpha -> inf."""

    name = "formula13"

    def __call__(self, alpha: float, n: int) -> float:
        return math.log(math.e + alpha ** (2.0 / n))


@dataclass(frozen=True)
class One:
    name = "one"

    def __call__(self, alpha: float, n: int) -> float:
        return 1.0


@dataclass(frozen=True)
class Interpolating:
    """gamma = ((2/n) alpha + beta) / (alpha + beta), running from 1 to 2/n."""

    beta: float = 1.0
    name = "interpolating"

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")

    def __call__(self, alpha: float, n: int) -> float:
        return (2.0 / n * alpha + self.beta) / (alpha + self.beta)


@dataclass(frozen=True)
class Constant:
    c: float = 1.0
    name = "constant"

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"constant gamma must be positive, got {self.c}")

    def __call__(self, alpha: float, n: int) -> float:
        return self.c


GammaRule = Formula13 | One | Interpolating | Constant


@dataclass(frozen=True)
class FamilyConfig:
    transform: Transform = Transform.LINEAR
    h_variant: HVariant = HVariant.STANDARD
    gamma: GammaRule = field(default_factory=Formula13)

    def describe(self) -> dict:
        rule = {"rule": self.gamma.name}
        if isinstance(self.gamma, Interpolating):
            rule["beta"] = self.gamma.beta
        elif isinstance(self.gamma, Constant):
            rule["c"] = self.gamma.c
        return {"transform": self.transform.value, "hvariant": self.h_variant.value, "gamma": rule}


# regularized Laplacian kernel family: shortest path at alpha -> 0, resistance at alpha -> inf
SHORTEST_PATH_FAMILY = FamilyConfig(Transform.LINEAR, HVariant.STANDARD, Formula13())
# weighted shortest path at alpha -> 0
WSP_FAMILY = FamilyConfig(Transform.POWER, HVariant.STANDARD, One())
# weighted shortest path at alpha -> 0, resistance at alpha -> inf
UNIFIED_FAMILY = FamilyConfig(Transform.EXP_SCALED, HVariant.ALPHA_LN, Interpolating(1.0))

PRESETS = {
    "shortest-path-preset": SHORTEST_PATH_FAMILY,
    "wsp-preset": WSP_FAMILY,
    "unified-preset": UNIFIED_FAMILY,
}


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HMatrix:
    values: np.ndarray
    alpha: float
    gamma: float


def kernel_matrix(g: WeightedMultigraph, cfg: FamilyConfig, alpha: float) -> np.ndarray:
    """``(I + L_alpha)^-1`` for the transformed graph G_alpha."""
    g_alpha = transform_weights(g, cfg.transform, alpha)
    return invert_spd(np.eye(g.n) + laplacian(g_alpha))


def log_factor(cfg: FamilyConfig, alpha: float, n: int) -> tuple[float, float]:
    """Return (gamma, multiplier applied to ln Q)."""
    gamma = cfg.gamma(alpha, n)
    if cfg.h_variant is HVariant.ALPHA_LN:
        return gamma, gamma * alpha
    if alpha == 1:
        return gamma, gamma
    return gamma, gamma * (alpha - 1) / math.log(alpha)


def h_matrix(q: np.ndarray, cfg: FamilyConfig, alpha: float, n: int | None = None) -> HMatrix:
    if n is None:
        n = q.shape[0]
    gamma, factor = log_factor(cfg, alpha, n)
    return HMatrix(elementwise_log(q, factor), alpha, gamma)


def distance_from_h(h: HMatrix | np.ndarray) -> np.ndarray:
    H = h.values if isinstance(h, HMatrix) else np.asarray(h, dtype=float)
    d = np.diag(H)
    D = 0.5 * (d[:, None] + d[None, :]) - H
    np.fill_diagonal(D, 0.0)
    return D


def _per_component(g: WeightedMultigraph, block_fn) -> np.ndarray:
    D = np.full((g.n, g.n), np.inf)
    for comp in connected_components(g):
        idx = np.array(comp) - 1
        if len(comp) == 1:
            D[idx[0], idx[0]] = 0.0
            continue
        sub, _ = induced_subgraph(g, comp)
        D[np.ix_(idx, idx)] = block_fn(sub)
    return D


def log_forest_distance_matrix(g: WeightedMultigraph, cfg: FamilyConfig, alpha: float) -> np.ndarray:
    """Logarithmic forest distances, ``inf`` across components.

    Each component is treated as a graph of its own, so n in the gamma rule
    is the component size.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")

    def block(sub: WeightedMultigraph) -> np.ndarray:
        q = kernel_matrix(sub, cfg, alpha)
        return distance_from_h(h_matrix(q, cfg, alpha, sub.n))

    return _per_component(g, block)


def ordinary_forest_distance_matrix(g: WeightedMultigraph, alpha: float) -> np.ndarray:
    """``(q_ii + q_jj)/2 - q_ij`` on ``Q = (I + alpha L)^-1``, ``inf`` across components."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")

    def block(sub: WeightedMultigraph) -> np.ndarray:
        q = invert_spd(np.eye(sub.n) + alpha * laplacian(sub))
        return distance_from_h(q)

    return _per_component(g, block)


# ---------------------------------------------------------------------------
# Limits
# ---------------------------------------------------------------------------

def max_offdiagonal_error(D: np.ndarray, target: np.ndarray) -> float:
    mask = ~np.eye(D.shape[0], dtype=bool) & np.isfinite(target)
    if not mask.any():
        return 0.0
    return float(np.abs(D[mask] - target[mask]).max())


@dataclass(frozen=True)
class ConvergenceReport:
    alphas: tuple[float, ...]
    errors: tuple[float, ...]

    def decreasing(self, slack: float = 1.0) -> bool:
        """True if each error is below ``slack`` times the previous one."""
        return all(b < slack * a for a, b in zip(self.errors, self.errors[1:]))

    @property
    def monotone(self) -> bool:
        return self.decreasing()

    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.alphas, self.errors))


def convergence_report(
    g: WeightedMultigraph,
    cfg: FamilyConfig,
    alphas: Sequence[float],
    target: np.ndarray,
) -> ConvergenceReport:
    """Max off-diagonal error against ``target`` at each alpha, in the given order.

    Order ``alphas`` so that the last one is nearest the limit.
    """
    errors = tuple(
        max_offdiagonal_error(log_forest_distance_matrix(g, cfg, a), target) for a in alphas
    )
    return ConvergenceReport(tuple(float(a) for a in alphas), errors)
