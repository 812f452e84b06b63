"""Dense symmetric linear algebra for kernels and Laplacian pseudoinverses."""

from __future__ import annotations

import numpy as np
from scipy import linalg as sla

from .errors import NumericalError

RESIDUAL_LIMIT = 1e-6


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def invert_spd(m) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix via Cholesky.

    The result is symmetrized, and rejected if ``max|m @ X - I|`` exceeds
    ``RESIDUAL_LIMIT``.
    """
    m = _square(m)
    n = m.shape[0]
    try:
        factor = sla.cho_factor(m, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"matrix is not positive definite: {exc}") from exc
    eye = np.eye(n)
    x = sla.cho_solve(factor, eye)
    x = 0.5 * (x + x.T)
    residual = np.abs(m @ x - eye).max()
    if not residual <= RESIDUAL_LIMIT:
        raise NumericalError(
            f"inverse residual {residual:.3g} exceeds {RESIDUAL_LIMIT:g}; matrix is too ill-conditioned"
        )
    return x


def laplacian_pseudoinverse(L, shift: float = 1.0) -> np.ndarray:
    """Moore-Penrose inverse of a connected graph's Laplacian.

    Computed as ``(L + shift*Jbar)^-1 - Jbar/shift`` where Jbar has all
    entries 1/n; any nonzero ``shift`` gives the same matrix.
    """
    L = _square(L)
    if shift == 0:
        raise ValueError("shift must be nonzero")
    n = L.shape[0]
    jbar = np.full((n, n), 1.0 / n)
    shifted = L + shift * jbar
    if shift > 0:
        try:
            inv = invert_spd(shifted)
        except NumericalError as exc:
            raise NumericalError(f"L + J/n is not invertible (disconnected graph?): {exc}") from exc
    else:
        # indefinite for negative shifts; fall back to an LU solve
        inv = np.linalg.solve(shifted, np.eye(n))
        inv = 0.5 * (inv + inv.T)
    return inv - jbar / shift


def elementwise_log(m, base_factor: float) -> np.ndarray:
    """``base_factor * ln(m_ij)`` for every entry; entries must be positive."""
    m = np.asarray(m, dtype=float)
    if not (m > 0).all():
        raise NumericalError(
            f"logarithm of nonpositive entry (min {m.min():.3g}); disconnected input or underflow"
        )
    return base_factor * np.log(m)
