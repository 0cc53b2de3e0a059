"""Column standardization, coefficient back-mapping and exact Gaussian-design MSE."""

import logging

import numpy as np

from l2boost.exceptions import DimensionMismatch, ZeroVarianceColumn
from l2boost.models.dataset import Dataset, SparseCoefficients, StandardizedDesign
from l2boost.utils.linalg import quadratic_form

logger = logging.getLogger(__name__)

# Relative size below which a centered column counts as constant
_ZERO_SCALE = 1e-12


def standardize(d: Dataset) -> StandardizedDesign:
    """
    Center every column and scale it to unit empirical norm.

    The response is centered as well; the intercept is recovered by
    unstandardize_coefficients.

    Args:
        d: Dataset to standardize

    Returns:
        StandardizedDesign with g_j satisfying n^-1 sum g_ij = 0 and
        n^-1 sum g_ij^2 = 1

    Raises:
        ZeroVarianceColumn: If a column is constant
    """
    centers = d.x.mean(axis=0)
    centered = d.x - centers
    scales = np.sqrt(np.mean(centered ** 2, axis=0))
    magnitude = np.maximum(1.0, np.max(np.abs(d.x), axis=0))
    constant = np.flatnonzero(scales <= _ZERO_SCALE * magnitude)
    if constant.size:
        j = int(constant[0])
        raise ZeroVarianceColumn(j, d.column_names[j])

    y_center = float(d.y.mean())
    logger.debug("Standardized %d x %d design", d.n, d.p)
    return StandardizedDesign(
        g=centered / scales,
        centers=centers,
        scales=scales,
        y_center=y_center,
        y_centered=d.y - y_center,
        column_names=d.column_names,
    )


def unstandardize_coefficients(theta: np.ndarray, s: StandardizedDesign) -> SparseCoefficients:
    """
    Map standardized-scale coefficients back to the original predictors.

    beta_j = theta_j / scale_j and intercept = y_center - sum_j beta_j center_j.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (s.p,):
        raise DimensionMismatch("Coefficient length differs from design width", p=s.p, theta=theta.shape[0])
    beta = theta / s.scales
    intercept = s.y_center - float(beta @ s.centers)
    return SparseCoefficients(intercept, beta)


def exact_mse(est: SparseCoefficients, truth: SparseCoefficients, v: np.ndarray) -> float:
    """
    E[(f_hat(X) - f(X))^2] for X ~ N(0, V) in closed form.

    Equals (mu_hat - mu)^2 + (beta_hat - beta)^T V (beta_hat - beta).

    Raises:
        DimensionMismatch: If est, truth and v disagree in dimension
    """
    v = np.asarray(v, dtype=float)
    if est.p != truth.p or v.shape != (truth.p, truth.p):
        raise DimensionMismatch(
            "Coefficient vectors and covariance disagree",
            est=est.p, truth=truth.p, v=list(v.shape),
        )
    d = est.beta - truth.beta
    value = (est.intercept - truth.intercept) ** 2 + float(quadratic_form(d, v))
    # Rounding can push an exact zero slightly negative
    return max(value, 0.0)
