"""Generative regression models and Gaussian data draws."""

import logging

import numpy as np
from scipy import optimize

from l2boost.exceptions import FixedPointFailure, InputFormatError
from l2boost.models.dataset import Dataset
from l2boost.models.enums import Covariance
from l2boost.models.simulation import SimulationModel
from l2boost.utils.rng import COEFFICIENT_STREAM, DATA_STREAM, make_rng

logger = logging.getLogger(__name__)

# Banded covariance and the scaling that keeps E|f(X)|^2 comparable to V = I
BAND_B = 0.677
BAND_C = 0.323
BAND_SCALE = 0.779

THREE_EFFECT_BETA = (5.0, 2.0, 1.0)
THREE_EFFECT_NOISE_SD = 2.0

DECAY_EXPONENT = 0.51
# Largest number of terms summed when evaluating the fixed-point equation
_MAX_TERMS = 10_000_000


def banded_covariance(p: int, b: float = BAND_B, c: float = BAND_C) -> np.ndarray:
    """Unit diagonal, b on the first off-diagonals, c on the second."""
    v = np.eye(p)
    idx = np.arange(p)
    v[idx[:-1], idx[1:]] = v[idx[1:], idx[:-1]] = b
    v[idx[:-2], idx[2:]] = v[idx[2:], idx[:-2]] = c
    return v


def make_three_effect_model(p: int, cov: Covariance = Covariance.IDENTITY) -> SimulationModel:
    """
    f(X) = a(V) (1 + 5 X1 + 2 X2 + X3) with noise sd 2.

    IDENTITY uses V = I and a = 1; BLOCK uses the banded V and a = 0.779.

    Raises:
        NotPositiveDefinite: If the banded V is indefinite at this p
    """
    if p < 3:
        raise InputFormatError("The three-effect model needs p >= 3", p=p)
    if cov is Covariance.IDENTITY:
        v, a = np.eye(p), 1.0
    else:
        v, a = banded_covariance(p), BAND_SCALE
    beta = np.zeros(p)
    beta[:3] = THREE_EFFECT_BETA
    return SimulationModel(
        v=v,
        beta_true=a * beta,
        intercept_true=a,
        noise_sd=THREE_EFFECT_NOISE_SD,
        label=f"{cov.value}-p{p}",
    )


def _decay_rhs(kappa: float, n: int, noise_var: float) -> float:
    terms = int(np.floor(kappa ** (-1.0 / DECAY_EXPONENT)))
    if terms > _MAX_TERMS:
        raise FixedPointFailure("Too many terms for the fixed-point sum", kappa=kappa, terms=terms)
    a = np.arange(1, terms + 1, dtype=float) ** DECAY_EXPONENT
    lam = np.maximum(1.0 - kappa * a, 0.0)
    return noise_var / n * float(np.sum(a * lam))


def solve_kappa(n: int, noise_var: float = 1.0) -> float:
    """
    Root of kappa = noise_var / n * sum_j a_j (1 - kappa a_j)_+ with a_j = j^0.51.

    The right-hand side decreases in kappa and the root lies above
    noise_var / (n + noise_var). The bracket is found by halving down from
    1, so the sum never needs many more terms than the dimension at the root.

    Raises:
        FixedPointFailure: If the bracket is invalid
    """
    if n < 2:
        raise InputFormatError("Sample size must be at least 2", n=n)
    if noise_var == 0.0:
        return 0.0
    if noise_var < 0.0:
        raise FixedPointFailure("Noise variance must be non-negative", noise_var=noise_var)

    floor = noise_var / (n + noise_var)

    def gap(kappa: float) -> float:
        return _decay_rhs(kappa, n, noise_var) - kappa

    high = 1.0
    low = max(high / 2.0, floor)
    while low > floor and gap(low) < 0.0:
        high, low = low, max(low / 2.0, floor)

    try:
        kappa = optimize.bisect(gap, low, high, xtol=1e-14, maxiter=200)
    except ValueError as exc:
        raise FixedPointFailure("Bisection bracket does not contain a root", low=low, high=high) from exc
    logger.debug("Fixed point kappa = %.6f for n = %d", kappa, n)
    return float(kappa)


def decaying_dimension(kappa: float) -> int:
    """p = max{j : j^0.51 <= 1/kappa}."""
    if kappa <= 0.0:
        raise FixedPointFailure("Dimension is unbounded for kappa = 0", kappa=kappa)
    p = int(np.floor(kappa ** (-1.0 / DECAY_EXPONENT)))
    # Guard the floor against rounding at an exact boundary
    while (p + 1) ** DECAY_EXPONENT <= 1.0 / kappa:
        p += 1
    while p > 0 and p ** DECAY_EXPONENT > 1.0 / kappa:
        p -= 1
    return p


def decaying_variances(n: int, noise_var: float = 1.0) -> np.ndarray:
    """sigma_j^2 = lambda_j / (n kappa a_j) for j = 1..p."""
    kappa = solve_kappa(n, noise_var)
    p = decaying_dimension(kappa)
    a = np.arange(1, p + 1, dtype=float) ** DECAY_EXPONENT
    lam = np.maximum(1.0 - kappa * a, 0.0)
    return lam / (n * kappa * a)


def make_decaying_model(n: int = 100, noise_sd: float = 1.0, seed: int = 0) -> SimulationModel:
    """
    V = I, beta_j ~ N(0, sigma_j^2) with decaying sigma_j^2, no intercept.

    The coefficients are drawn from the seed's coefficient stream, so a
    new seed gives a new beta.
    """
    variances = decaying_variances(n, noise_sd ** 2)
    rng = make_rng(seed, COEFFICIENT_STREAM)
    beta = rng.standard_normal(variances.shape[0]) * np.sqrt(variances)
    return SimulationModel(
        v=np.eye(variances.shape[0]),
        beta_true=beta,
        intercept_true=0.0,
        noise_sd=noise_sd,
        label=f"decaying-n{n}",
    )


def make_dense_model() -> SimulationModel:
    """f(X) = 0.2 + 0.2 sum_{j<=100} X_j, banded V, noise sd 0.5."""
    p = 100
    return SimulationModel(
        v=banded_covariance(p),
        beta_true=np.full(p, 0.2),
        intercept_true=0.2,
        noise_sd=0.5,
        label="dense-p100",
    )


def draw_dataset(model: SimulationModel, n: int, seed: int) -> Dataset:
    """
    n i.i.d. rows X ~ N(0, V) and Y = intercept + beta^T X + eps.

    Deterministic in (model, n, seed).
    """
    if n < 2:
        raise InputFormatError("Sample size must be at least 2", n=n)
    rng = make_rng(seed, DATA_STREAM)
    z = rng.standard_normal((n, model.p))
    x = z @ model.factor.T
    eps = rng.standard_normal(n) * model.noise_sd
    y = model.intercept_true + x @ model.beta_true + eps
    return Dataset(x, y)
