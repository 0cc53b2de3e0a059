"""Shared construction helpers for tests."""

import numpy as np

from l2boost.models.dataset import StandardizedDesign


def orthonormal_design(n: int, p: int, seed: int = 0) -> np.ndarray:
    """Centered columns with <g_j, g_k>_(n) = delta_jk."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, p))
    z -= z.mean(axis=0)
    q, _ = np.linalg.qr(z)
    return q * np.sqrt(n)


def design_from_columns(g: np.ndarray, y: np.ndarray) -> StandardizedDesign:
    """StandardizedDesign around already standardized columns."""
    y = np.asarray(y, dtype=float)
    return StandardizedDesign(
        g=g,
        centers=np.zeros(g.shape[1]),
        scales=np.ones(g.shape[1]),
        y_center=float(y.mean()),
        y_centered=y - y.mean(),
        column_names=tuple(f"x{j + 1}" for j in range(g.shape[1])),
    )
