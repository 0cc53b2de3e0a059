"""Finite dictionaries and weak greedy traces."""

from dataclasses import dataclass, field

import numpy as np

from l2boost.exceptions import DimensionMismatch, ValidationError
from l2boost.models.dataset import _frozen


@dataclass(frozen=True)
class FiniteDictionary:
    """
    Unit-norm elements g_j (columns of `vectors`) and a target f = sum_j beta_j g_j.

    `gram_scale` is the inner-product normalization: 1.0 for the Euclidean
    product, 1/n for the empirical product <u, v>_(n) = n^-1 u.v.
    """
    vectors: np.ndarray
    target_coeffs: np.ndarray
    gram_scale: float = 1.0
    b_bound: float = field(init=False)

    def __post_init__(self):
        vectors = _frozen(self.vectors)
        coeffs = _frozen(self.target_coeffs)
        if vectors.ndim != 2 or coeffs.shape != (vectors.shape[1],):
            raise DimensionMismatch("Coefficient count differs from dictionary size")
        norms = np.sqrt(self.gram_scale * np.sum(vectors ** 2, axis=0))
        if np.any(np.abs(norms - 1.0) > 1e-10):
            raise ValidationError("Dictionary elements must have unit norm", code="NOT_UNIT_NORM")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "target_coeffs", coeffs)
        object.__setattr__(self, "b_bound", float(np.sum(np.abs(coeffs))))

    @property
    def f(self) -> np.ndarray:
        return self.vectors @ self.target_coeffs

    def inner(self, u: np.ndarray) -> np.ndarray:
        """Inner products <u, g_j> for all j."""
        return (self.vectors.T @ u) * self.gram_scale

    def norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(self.gram_scale * (u @ u)))


@dataclass(frozen=True)
class GreedyTrace:
    """
    Weak greedy run. Entry k of indices/inner_products is step m = k + 1;
    norms and bounds have one extra leading entry for m = 0.
    """
    indices: np.ndarray
    inner_products: np.ndarray
    norms: np.ndarray
    bounds: np.ndarray
    nu: float
    b: float
