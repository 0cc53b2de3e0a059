"""Hat matrix, information criteria, stopping rules and fold assignment."""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from l2boost.exceptions import (
    BadFoldCount,
    DegenerateDenominator,
    DimensionMismatch,
    NoValidIteration,
    ValidationError,
    ZeroColumn,
    ZeroSigma,
)
from l2boost.models.boosting import BoostPath, HatState, SettingOracle, StoppingResult
from l2boost.models.enums import StoppingRule, Variant
from l2boost.models.simulation import SimulationModel
from l2boost.services.boosting import mse_curve
from l2boost.utils.rng import FOLD_STREAM, make_rng

logger = logging.getLogger(__name__)

# Probabilities are clamped to [delta, 1 - delta] in the Bernoulli likelihood
BERNOULLI_DELTA = 1e-6


def hat_update(state: HatState, x_col: np.ndarray, nu: float) -> HatState:
    """
    Advance B_{m-1} to B_m = I - (I - nu H)(I - B_{m-1}) in place.

    With H = x x^T / |x|^2 this is the rank-one update
    B_m = B_{m-1} + (nu / |x|^2) x r^T, r = (I - B_{m-1})^T x.

    Raises:
        ZeroColumn: If x_col has zero norm
    """
    x = np.asarray(x_col, dtype=float)
    norm2 = float(x @ x)
    if norm2 <= 0.0:
        raise ZeroColumn()
    r = x - state.b.T @ x
    scale = nu / norm2
    state.b += scale * np.outer(x, r)
    state.trace += scale * float(x @ r)
    state.m += 1
    return state


def hat_trace_path(path: BoostPath) -> Tuple[np.ndarray, HatState]:
    """
    trace(B_m) for m = 1..M of an L2Boosting path.

    Returns:
        Tuple of (traces, final HatState)
    """
    if path.variant is not Variant.L2BOOST:
        raise ValidationError(
            "Hat matrix degrees of freedom exist only for L2Boosting",
            code="NO_HAT_MATRIX",
        )
    g = path.design.g
    n = path.design.n
    state = HatState.initial(n)
    traces = np.empty(path.m_total)
    warned = False
    for k, j in enumerate(path.indices):
        hat_update(state, g[:, j], path.nu)
        traces[k] = state.trace
        if state.trace > n and not warned:
            logger.warning("trace(B_m) = %.3f exceeds n = %d at iteration %d", state.trace, n, k + 1)
            warned = True
    return traces, state


def aicc(rss: float, trace_m: float, n: int) -> float:
    """
    Corrected AIC: log(rss/n) + (1 + trace/n) / (1 - (trace + 2)/n).

    Raises:
        DegenerateDenominator: If trace_m + 2 >= n
        ZeroSigma: If rss is not positive
    """
    if trace_m + 2.0 >= n:
        raise DegenerateDenominator(trace_m, n)
    if not rss > 0.0:
        raise ZeroSigma()
    return float(np.log(rss / n) + (1.0 + trace_m / n) / (1.0 - (trace_m + 2.0) / n))


def aicc_curve(rss: np.ndarray, traces: np.ndarray, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized AIC_c; invalid entries are +inf with valid == False.
    """
    rss = np.asarray(rss, dtype=float)
    traces = np.asarray(traces, dtype=float)
    valid = (traces + 2.0 < n) & (rss > 0.0)
    values = np.full(rss.shape, np.inf)
    r, t = rss[valid], traces[valid]
    values[valid] = np.log(r / n) + (1.0 + t / n) / (1.0 - (t + 2.0) / n)
    return values, valid


def _bernoulli_loglik(y: np.ndarray, fitted: np.ndarray) -> np.ndarray:
    p = np.clip(fitted, BERNOULLI_DELTA, 1.0 - BERNOULLI_DELTA)
    return np.sum(y * np.log(p) + (1.0 - y) * np.log1p(-p), axis=-1)


def aic_bernoulli(y: np.ndarray, fitted: np.ndarray, trace_m: float) -> float:
    """-2 * Bernoulli log-likelihood of clamped probabilities + 2 * trace_m."""
    y = np.asarray(y, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    if y.shape != fitted.shape:
        raise DimensionMismatch("Responses and fitted values differ in length")
    return float(-2.0 * _bernoulli_loglik(y, fitted) + 2.0 * trace_m)


def select_m(
    criterion_values: np.ndarray,
    valid_mask: Optional[np.ndarray] = None,
    rule: StoppingRule = StoppingRule.AICC,
    first_m: int = 1,
) -> StoppingResult:
    """
    Smallest iteration attaining the minimum over valid entries.

    Raises:
        NoValidIteration: If no entry is valid
    """
    values = np.asarray(criterion_values, dtype=float)
    valid = np.isfinite(values) if valid_mask is None else np.asarray(valid_mask, dtype=bool)
    if not valid.any():
        raise NoValidIteration()
    skipped = int(np.count_nonzero(~valid))
    if skipped:
        logger.debug("Skipping %d invalid criterion entries", skipped)
    masked = np.where(valid, values, np.inf)
    k = int(np.argmin(masked))
    return StoppingResult(
        m_hat=k + first_m,
        criterion_values=values,
        rule=rule,
        valid=valid,
        first_m=first_m,
    )


def stop_aicc(path: BoostPath) -> Tuple[StoppingResult, BoostPath]:
    """Select M_hat by AIC_c and return the path annotated with traces and criterion."""
    traces, _ = hat_trace_path(path)
    values, valid = aicc_curve(path.rss, traces, path.design.n)
    result = select_m(values, valid, StoppingRule.AICC)
    logger.info("AIC_c selected m = %d of %d", result.m_hat, path.m_total)
    return result, path.with_criterion(traces, values)


def stop_aic_bernoulli(
    path: BoostPath,
    y01: np.ndarray,
    offset: float = 0.0,
) -> Tuple[StoppingResult, BoostPath]:
    """
    Select M_hat by the Bernoulli AIC on the training rows of the path.

    Fitted probabilities are the boosting fits shifted by offset onto the
    0/1 scale (offset 1/2 for a path fitted to centered labels).
    """
    y01 = np.asarray(y01, dtype=float)
    traces, _ = hat_trace_path(path)
    g = path.design.g
    fitted = np.full(path.design.n, path.design.y_center + offset)
    values = np.empty(path.m_total)
    for k, (j, step) in enumerate(zip(path.indices, path.increments)):
        fitted += step * g[:, j]
        values[k] = -2.0 * _bernoulli_loglik(y01, fitted) + 2.0 * traces[k]
    result = select_m(values, np.isfinite(values), StoppingRule.AIC_BERNOULLI)
    logger.info("Bernoulli AIC selected m = %d of %d", result.m_hat, path.m_total)
    return result, path.with_criterion(traces, values)


def oracle_stop(path: BoostPath, truth: SimulationModel) -> StoppingResult:
    """Iteration in 0..M minimizing the exact MSE against the simulation truth."""
    curve = mse_curve(path, truth)
    return select_m(curve, np.isfinite(curve), StoppingRule.ORACLE, first_m=0)


def setting_oracle(curves: Sequence[np.ndarray]) -> SettingOracle:
    """
    Grid index minimizing the exact MSE averaged over replications.

    Shorter curves (paths that stopped early) are held at their last
    value. Ties go to the smallest index.

    Raises:
        ValidationError: If no curves are given
    """
    if not curves:
        raise ValidationError("No replication curves to tune over", code="EMPTY_CURVES")
    length = max(c.shape[0] for c in curves)
    table = np.vstack([np.pad(np.asarray(c, dtype=float), (0, length - c.shape[0]), mode="edge") for c in curves])
    mean = table.mean(axis=0)
    k = int(np.argmin(mean))
    logger.debug("Setting oracle picked index %d of %d", k, length)
    return SettingOracle(index=k, mses=table[:, k].copy(), mean=mean)


def kfold_split(
    n: int,
    k: int,
    seed: int,
    stratify_labels: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Assign each of n samples to one of k folds.

    Fold sizes differ by at most one; with stratify_labels the per-class
    counts in each fold also differ by at most one.

    Returns:
        Integer array of fold ids in 0..k-1

    Raises:
        BadFoldCount: If k < 2 or k > n
    """
    if not 2 <= k <= n:
        raise BadFoldCount(k, n)
    rng = make_rng(seed, FOLD_STREAM)
    folds = np.empty(n, dtype=np.int64)
    if stratify_labels is None:
        perm = rng.permutation(n)
        folds[perm] = np.arange(n) % k
        return folds

    labels = np.asarray(stratify_labels)
    if labels.shape != (n,):
        raise DimensionMismatch("Label count differs from sample count", n=n, labels=labels.shape[0])
    offset = 0
    for cls in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == cls))
        folds[members] = (offset + np.arange(members.size)) % k
        offset += members.size
    return folds
