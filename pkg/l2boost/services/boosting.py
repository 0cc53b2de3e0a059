"""L2Boosting and forward stagewise iterations over a standardized design."""

import logging
from typing import Iterator

import numpy as np

from l2boost.exceptions import IterationOutOfRange, NumericalStop
from l2boost.models.boosting import BoostPath
from l2boost.models.configs import BoostConfig
from l2boost.models.dataset import SparseCoefficients, StandardizedDesign
from l2boost.models.enums import Variant
from l2boost.models.simulation import SimulationModel
from l2boost.services.base_learner import componentwise_ls
from l2boost.services.design import unstandardize_coefficients

logger = logging.getLogger(__name__)

# RSS at or below this fraction of the initial RSS counts as underflow
_UNDERFLOW = 1e-28


def boost_fit(
    g: StandardizedDesign,
    cfg: BoostConfig = BoostConfig(),
    raise_on_stop: bool = False,
) -> BoostPath:
    """
    Run cfg.m_max boosting iterations on the centered response.

    Each iteration fits the componentwise base procedure to the current
    residuals and adds nu * beta_hat * g_S (L2BOOST) or nu * sign(beta_hat) * g_S
    (FSLR). Residuals are updated incrementally and recomputed from the
    coefficients every cfg.resync_every iterations.

    Args:
        g: Standardized design
        cfg: Step size, iteration cap and variant
        raise_on_stop: Raise NumericalStop instead of returning a truncated path

    Returns:
        BoostPath with one record per completed iteration

    Raises:
        EmptyDesign: If the design has no columns
        NumericalStop: If raise_on_stop is set and the RSS underflows
    """
    y = g.y_centered
    u = np.array(y, dtype=float)
    theta = np.zeros(g.p)
    rss_initial = float(u @ u)
    floor = _UNDERFLOW * rss_initial

    indices = np.empty(cfg.m_max, dtype=np.int64)
    increments = np.empty(cfg.m_max)
    rss = np.empty(cfg.m_max)
    stopped = False
    m = 0

    while m < cfg.m_max:
        fit = componentwise_ls(g, u)
        if cfg.variant is Variant.L2BOOST:
            step = cfg.nu * fit.coefficient
        else:
            step = cfg.nu * float(np.sign(fit.coefficient))

        j = fit.index
        theta[j] += step
        u -= step * g.g[:, j]
        m += 1
        if m % cfg.resync_every == 0:
            u = y - g.g @ theta
            logger.debug("Resynchronized residuals at iteration %d", m)

        indices[m - 1] = j
        increments[m - 1] = step
        rss[m - 1] = float(u @ u)

        if rss[m - 1] <= floor:
            stopped = True
            logger.warning("Residual sum of squares underflowed at iteration %d; path truncated", m)
            if raise_on_stop:
                raise NumericalStop(m)
            break

    logger.debug("Boosting finished after %d iterations (nu=%g, %s)", m, cfg.nu, cfg.variant.value)
    return BoostPath(
        design=g,
        nu=cfg.nu,
        variant=cfg.variant,
        indices=indices[:m].copy(),
        increments=increments[:m].copy(),
        rss=rss[:m].copy(),
        rss_initial=rss_initial,
        stopped_early=stopped,
    )


def _check_iteration(path: BoostPath, m: int) -> None:
    if not 0 <= m <= path.m_total:
        raise IterationOutOfRange(m, path.m_total)


def coefficients_at(path: BoostPath, m: int) -> SparseCoefficients:
    """
    Original-scale coefficients after m iterations (m = 0 is intercept-only).

    Raises:
        IterationOutOfRange: If m is outside 0..M
    """
    _check_iteration(path, m)
    return unstandardize_coefficients(path.theta_at(m), path.design)


def predict(path: BoostPath, m: int, x: np.ndarray) -> np.ndarray:
    """
    Predictions on original-scale rows after m iterations.

    Raises:
        IterationOutOfRange: If m is outside 0..M
    """
    return coefficients_at(path, m).predict(x)


def staged_predict(path: BoostPath, x: np.ndarray) -> Iterator[np.ndarray]:
    """Yield predictions for m = 0, 1, ..., M by replaying the increments."""
    z = path.design.transform(x)
    f = np.full(z.shape[0], path.design.y_center)
    yield f.copy()
    for j, step in zip(path.indices, path.increments):
        f += step * z[:, j]
        yield f.copy()


def mse_curve(path: BoostPath, model: SimulationModel) -> np.ndarray:
    """
    Exact MSE against a known simulation truth at every m = 0..M.

    The quadratic form is updated in O(p) per iteration.
    """
    s = path.design
    v = model.v
    d = -model.beta_true.astype(float)
    vd = v @ d
    q = float(d @ vd)
    e = s.y_center - model.intercept_true

    out = np.empty(path.m_total + 1)
    out[0] = e ** 2 + q
    for k, (j, step) in enumerate(zip(path.indices, path.increments), start=1):
        delta = step / s.scales[j]
        q += 2.0 * delta * vd[j] + delta ** 2 * v[j, j]
        vd += delta * v[:, j]
        e -= delta * s.centers[j]
        out[k] = e ** 2 + max(q, 0.0)
    return out
