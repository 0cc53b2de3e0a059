"""Comparison estimators: OLS, ridge, forward selection under AIC, Lasso."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg

from l2boost.exceptions import NoConvergence, SingularDesign, ValidationError
from l2boost.models.configs import LassoConfig, RidgeConfig
from l2boost.models.dataset import Dataset, SparseCoefficients, StandardizedDesign
from l2boost.models.simulation import Setting, SimulationModel
from l2boost.services.design import exact_mse, standardize, unstandardize_coefficients
from l2boost.services.model_selection import kfold_split, setting_oracle
from l2boost.services.simulation_models import draw_dataset
from l2boost.utils.linalg import soft_threshold

logger = logging.getLogger(__name__)

# Reciprocal condition number below which the Gram matrix counts as singular
_RCOND = 1e-12


@dataclass(frozen=True)
class ForwardSelection:
    coefficients: SparseCoefficients
    order: Tuple[int, ...]
    rss: np.ndarray
    aic: np.ndarray


@dataclass(frozen=True)
class CvFit:
    """Cross-validated fit; fold_predictions[i, l] is the out-of-fold prediction."""
    coefficients: SparseCoefficients
    lam: float
    lambdas: np.ndarray
    cv_errors: np.ndarray
    folds: np.ndarray
    fold_predictions: np.ndarray


@dataclass(frozen=True)
class RidgeOracle:
    lambda_star: float
    mses: np.ndarray
    mean_by_lambda: np.ndarray


# OLS and ridge

def ols_fit(g: StandardizedDesign) -> SparseCoefficients:
    """
    Least squares on all columns via the normal equations.

    Raises:
        SingularDesign: If p >= n or the design is rank deficient
    """
    n, p = g.n, g.p
    if p >= n:
        raise SingularDesign(n, p)
    gram = g.g.T @ g.g
    eig = np.linalg.eigvalsh(gram)
    if eig[0] <= _RCOND * eig[-1]:
        raise SingularDesign(n, p)
    theta = linalg.solve(gram, g.g.T @ g.y_centered, assume_a="pos")
    return unstandardize_coefficients(theta, g)


def ridge_fit(g: StandardizedDesign, lam: float) -> SparseCoefficients:
    """
    Minimize sum_i (y_i - beta^T g_i)^2 + lam |beta|^2 on the standardized scale.

    lam = 0 reduces to ols_fit.
    """
    if lam < 0:
        raise ValidationError("Ridge penalty must be non-negative", code="BAD_PENALTY", details={"lambda": lam})
    if lam == 0:
        return ols_fit(g)
    gram = g.g.T @ g.g + lam * np.eye(g.p)
    theta = linalg.solve(gram, g.g.T @ g.y_centered, assume_a="pos")
    return unstandardize_coefficients(theta, g)


def ridge_path(g: StandardizedDesign, grid: List[float]) -> np.ndarray:
    """Standardized ridge coefficients for every penalty, one row per lambda."""
    u, sv, vt = linalg.svd(g.g, full_matrices=False)
    uty = u.T @ g.y_centered
    grid = np.asarray(grid, dtype=float)
    shrink = sv[None, :] / (sv[None, :] ** 2 + grid[:, None])
    return (shrink * uty[None, :]) @ vt


def ridge_grid_mse(d: Dataset, model: SimulationModel, grid: List[float]) -> np.ndarray:
    """Exact MSE of the ridge fit at every grid penalty."""
    g = standardize(d)
    thetas = ridge_path(g, grid)
    truth = model.truth
    return np.array([exact_mse(unstandardize_coefficients(t, g), truth, model.v) for t in thetas])


def ridge_oracle(
    setting: Setting,
    replications: int,
    base_seed: int = 0,
    cfg: RidgeConfig = RidgeConfig(),
) -> RidgeOracle:
    """
    One penalty per setting minimizing the MSE averaged over replications.

    Replication r draws its data with seed base_seed + r.
    """
    table = np.empty((replications, len(cfg.lambda_grid)))
    for r in range(replications):
        seed = base_seed + r
        model = setting.model(seed)
        table[r] = ridge_grid_mse(draw_dataset(model, setting.n, seed), model, cfg.lambda_grid)
    return ridge_oracle_from_table(table, cfg.lambda_grid)


def ridge_oracle_from_table(table: np.ndarray, grid: List[float]) -> RidgeOracle:
    oracle = setting_oracle(list(table))
    return RidgeOracle(lambda_star=float(grid[oracle.index]), mses=oracle.mses, mean_by_lambda=oracle.mean)


def ridge_cv(d: Dataset, cfg: RidgeConfig = RidgeConfig(), seed: int = 0) -> CvFit:
    """Ridge with the penalty chosen by k-fold cross-validation."""
    grid = np.asarray(cfg.lambda_grid, dtype=float)

    def fold_fit(train: Dataset) -> Tuple[StandardizedDesign, np.ndarray]:
        g = standardize(train)
        return g, ridge_path(g, cfg.lambda_grid)

    return _cross_validate(d, grid, cfg.folds, seed, fold_fit)


# Forward selection

def forward_select_aic(g: StandardizedDesign) -> ForwardSelection:
    """
    Greedy forward selection under AIC = n log(RSS/n) + 2 (k + 1).

    Each step adds the column with the largest RSS reduction given the
    current active set; selection stops once AIC no longer decreases and
    the active set is refitted by least squares.
    """
    n, p = g.n, g.p
    q = np.array(g.g, dtype=float)
    r = np.array(g.y_centered, dtype=float)
    rss = float(r @ r)
    rss_path = [rss]
    aic_path = [n * np.log(rss / n) + 2.0] if rss > 0 else [-np.inf]
    order: List[int] = []
    available = np.ones(p, dtype=bool)

    while len(order) < min(p, n - 2) and rss > 0:
        norms = np.sum(q ** 2, axis=0)
        eligible = available & (norms > 1e-10 * n)
        if not eligible.any():
            break
        gain = np.where(eligible, (q.T @ r) ** 2 / np.where(eligible, norms, 1.0), -np.inf)
        j = int(np.argmax(gain))
        new_rss = max(rss - gain[j], 0.0)
        k = len(order) + 1
        new_aic = n * np.log(new_rss / n) + 2.0 * (k + 1) if new_rss > 0 else -np.inf
        if new_aic >= aic_path[-1]:
            break

        e = q[:, j] / np.sqrt(norms[j])
        r -= (e @ r) * e
        q -= np.outer(e, e @ q)
        available[j] = False
        order.append(j)
        rss = new_rss
        rss_path.append(rss)
        aic_path.append(new_aic)
        logger.debug("Forward selection added column %d (RSS %.6g)", j, rss)

    theta = np.zeros(p)
    if order:
        sub = g.g[:, order]
        theta[order] = linalg.lstsq(sub, g.y_centered)[0]
    return ForwardSelection(
        coefficients=unstandardize_coefficients(theta, g),
        order=tuple(order),
        rss=np.array(rss_path),
        aic=np.array(aic_path),
    )


# Lasso

def lasso_lambda_max(g: StandardizedDesign) -> float:
    """Smallest penalty at which the null model is optimal."""
    return float(np.max(np.abs(g.g.T @ g.y_centered)) / g.n)


def lasso_grid(g: StandardizedDesign, cfg: LassoConfig = LassoConfig()) -> np.ndarray:
    """Geometric grid from lambda_max down to lambda_max * lambda_min_ratio."""
    top = lasso_lambda_max(g)
    if top <= 0:
        return np.zeros(cfg.n_lambda)
    return np.geomspace(top, top * cfg.lambda_min_ratio, cfg.n_lambda)


def _sweep(gt: np.ndarray, r: np.ndarray, theta: np.ndarray, coords, lam: float, n: int) -> float:
    largest = 0.0
    for j in coords:
        gj = gt[j]
        old = theta[j]
        z = old + (gj @ r) / n
        new = float(soft_threshold(z, lam))
        if new != old:
            r -= (new - old) * gj
            theta[j] = new
            largest = max(largest, abs(new - old))
    return largest


def kkt_gap(g: np.ndarray, r: np.ndarray, theta: np.ndarray, lam: float) -> float:
    """Largest violation of the Lasso optimality conditions."""
    c = (g.T @ r) / g.shape[0]
    active = theta != 0
    gap_inactive = np.max(np.abs(c[~active]) - lam, initial=0.0)
    gap_active = np.max(np.abs(c[active] - lam * np.sign(theta[active])), initial=0.0)
    return float(max(gap_inactive, gap_active, 0.0))


def _cd_solve(
    gt: np.ndarray,
    y: np.ndarray,
    lam: float,
    theta: np.ndarray,
    tol: float,
    max_sweeps: int,
) -> Tuple[np.ndarray, int, bool]:
    """
    Cyclic coordinate descent with an active-set inner loop.

    A full sweep over all coordinates alternates with sweeps over the
    current nonzero set. Converged once a full sweep moves every coordinate
    by less than sqrt(tol * var(y)), the squared-change rule of glmnet.
    """
    p, n = gt.shape
    r = y - gt.T @ theta
    threshold = np.sqrt(tol * max(float(y @ y) / n, np.finfo(float).tiny))
    sweeps = 0
    while sweeps < max_sweeps:
        delta = _sweep(gt, r, theta, range(p), lam, n)
        sweeps += 1
        if delta < threshold:
            return theta, sweeps, True
        active = np.flatnonzero(theta)
        while sweeps < max_sweeps:
            delta = _sweep(gt, r, theta, active, lam, n)
            sweeps += 1
            if delta < threshold:
                break
    return theta, sweeps, False


def lasso_solve(
    g: StandardizedDesign,
    lam: float,
    cfg: LassoConfig = LassoConfig(),
    warm: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Standardized Lasso coefficients at one penalty.

    Raises:
        ValidationError: If lam is negative
        NoConvergence: If cfg.max_sweeps sweeps do not reach cfg.tol
    """
    if lam < 0:
        raise ValidationError("Lasso penalty must be non-negative", code="BAD_PENALTY", details={"lambda": lam})
    gt = np.ascontiguousarray(g.g.T)
    theta = np.zeros(g.p) if warm is None else np.array(warm, dtype=float)
    theta, sweeps, converged = _cd_solve(gt, g.y_centered, lam, theta, cfg.tol, cfg.max_sweeps)
    if not converged:
        gap = kkt_gap(g.g, g.y_centered - g.g @ theta, theta, lam)
        raise NoConvergence(sweeps, gap, lam)
    return theta


def lasso_cd(g: StandardizedDesign, lam: float, cfg: LassoConfig = LassoConfig()) -> SparseCoefficients:
    """
    Minimize (2n)^-1 sum_i (y_i - beta^T g_i)^2 + lam sum_j |beta_j|.

    Raises:
        NoConvergence: If coordinate descent does not converge
    """
    return unstandardize_coefficients(lasso_solve(g, lam, cfg), g)


def lasso_path(g: StandardizedDesign, lambdas: np.ndarray, cfg: LassoConfig = LassoConfig()) -> np.ndarray:
    """Warm-started standardized solutions along a decreasing grid, one row per lambda."""
    out = np.zeros((len(lambdas), g.p))
    theta = np.zeros(g.p)
    for k, lam in enumerate(lambdas):
        theta = lasso_solve(g, float(lam), cfg, warm=theta)
        out[k] = theta
    return out


def lasso_cv(d: Dataset, cfg: LassoConfig = LassoConfig(), seed: int = 0) -> CvFit:
    """
    Lasso with the penalty minimizing k-fold CV squared prediction error.

    The grid comes from the full data; each fold is standardized on its
    own training part. The final fit is the full-data path at the chosen
    penalty.
    """
    g_full = standardize(d)
    grid = lasso_grid(g_full, cfg)

    def fold_fit(train: Dataset) -> Tuple[StandardizedDesign, np.ndarray]:
        g = standardize(train)
        return g, lasso_path(g, grid, cfg)

    result = _cross_validate(d, grid, cfg.folds, seed, fold_fit)
    logger.info("Lasso CV chose lambda = %.4g (%d active)", result.lam, result.coefficients.active_set.size)
    return result


def lasso_grid_mse(d: Dataset, model: SimulationModel, cfg: LassoConfig = LassoConfig()) -> Tuple[np.ndarray, np.ndarray]:
    """
    Exact MSE along the full-data Lasso path.

    Entry k belongs to lambda_max * r_k with the same ratios r_k for every
    dataset, so curves from different replications line up by index.

    Returns:
        Tuple of (MSE per grid point, grid)
    """
    g = standardize(d)
    grid = lasso_grid(g, cfg)
    thetas = lasso_path(g, grid, cfg)
    truth = model.truth
    return np.array([exact_mse(unstandardize_coefficients(t, g), truth, model.v) for t in thetas]), grid


def lasso_ratios(cfg: LassoConfig = LassoConfig()) -> np.ndarray:
    """Grid penalties relative to lambda_max."""
    return np.geomspace(1.0, cfg.lambda_min_ratio, cfg.n_lambda)


def lasso_oracle(d: Dataset, model: SimulationModel, cfg: LassoConfig = LassoConfig()) -> Tuple[float, float]:
    """
    Penalty on one dataset's path minimizing the exact MSE.

    Returns:
        Tuple of (minimal MSE, chosen lambda)
    """
    mses, grid = lasso_grid_mse(d, model, cfg)
    k = int(np.argmin(mses))
    return float(mses[k]), float(grid[k])


def _cross_validate(d: Dataset, grid: np.ndarray, k: int, seed: int, fold_fit) -> CvFit:
    """
    Shared k-fold loop for grid-tuned estimators.

    fold_fit(train) returns the training standardization and one row of
    standardized coefficients per grid value. The CV error is the mean
    over folds of the fold's mean squared prediction error.
    """
    folds = kfold_split(d.n, k, seed)
    predictions = np.empty((d.n, len(grid)))
    fold_errors = np.empty((k, len(grid)))
    for f in range(k):
        test = folds == f
        g, thetas = fold_fit(d.subset(np.flatnonzero(~test)))
        pred = g.y_center + g.transform(d.x[test]) @ thetas.T
        predictions[test] = pred
        fold_errors[f] = np.mean((d.y[test][:, None] - pred) ** 2, axis=0)
        logger.debug("Fold %d/%d done", f + 1, k)

    cv_errors = fold_errors.mean(axis=0)
    best = int(np.argmin(cv_errors))
    g_full, thetas_full = fold_fit(d)
    return CvFit(
        coefficients=unstandardize_coefficients(thetas_full[best], g_full),
        lam=float(grid[best]),
        lambdas=np.asarray(grid, dtype=float),
        cv_errors=cv_errors,
        folds=folds,
        fold_predictions=predictions,
    )
