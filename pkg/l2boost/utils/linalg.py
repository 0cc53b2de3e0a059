"""Linear algebra helpers shared by the services."""

import numpy as np
from scipy import linalg

from l2boost.exceptions import NotPositiveDefinite


def lower_factor(v: np.ndarray) -> np.ndarray:
    """
    Lower-triangular factor L with L @ L.T == v.

    Raises:
        NotPositiveDefinite: If the Cholesky factorization fails
    """
    try:
        return linalg.cholesky(v, lower=True)
    except linalg.LinAlgError as exc:
        raise NotPositiveDefinite(v.shape[0]) from exc


def quadratic_form(d: np.ndarray, v: np.ndarray) -> np.ndarray:
    """d^T V d for a vector d, or row-wise for a matrix of displacements."""
    return np.einsum("...i,ij,...j->...", d, v, d)


def soft_threshold(z, lam: float):
    return np.sign(z) * np.maximum(np.abs(z) - lam, 0.0)
