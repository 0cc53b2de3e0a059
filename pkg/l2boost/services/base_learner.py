"""Componentwise linear least-squares base procedure."""

import numpy as np

from l2boost.exceptions import DimensionMismatch, EmptyDesign
from l2boost.models.boosting import BaseFit
from l2boost.models.dataset import StandardizedDesign


def empirical_inner(g: np.ndarray, u: np.ndarray) -> np.ndarray:
    """<u, g_j>_(n) = n^-1 sum_i u_i g_ij for every column j."""
    return (g.T @ u) * (1.0 / g.shape[0])


def select_component(correlations: np.ndarray) -> int:
    """Index of the largest |correlation|; the smallest index wins exact ties."""
    return int(np.argmax(np.abs(correlations)))


def componentwise_ls(g: StandardizedDesign, u: np.ndarray) -> BaseFit:
    """
    Fit u against the single column that reduces the RSS most.

    With unit-norm columns the least-squares coefficient of column j is
    <u, g_j>_(n), and the RSS reduction is n * coefficient^2.

    Args:
        g: Standardized design
        u: Current residuals, length n

    Returns:
        BaseFit for the selected column

    Raises:
        EmptyDesign: If the design has no columns
    """
    if g.p == 0:
        raise EmptyDesign()
    u = np.asarray(u, dtype=float)
    if u.shape != (g.n,):
        raise DimensionMismatch("Residual length differs from row count", n=g.n, u=u.shape[0])

    correlations = empirical_inner(g.g, u)
    j = select_component(correlations)
    beta = float(correlations[j])
    rss_after = max(float(u @ u) - g.n * beta ** 2, 0.0)
    return BaseFit(index=j, coefficient=beta, rss_after=rss_after, correlation=beta)
