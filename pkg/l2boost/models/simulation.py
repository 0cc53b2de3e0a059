"""Generative simulation models and benchmark reports."""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from l2boost.exceptions import DimensionMismatch, ValidationError
from l2boost.models.dataset import SparseCoefficients, _frozen
from l2boost.utils.linalg import lower_factor, quadratic_form


@dataclass(frozen=True)
class SimulationModel:
    """
    Gaussian linear model Y = intercept + beta^T X + eps, X ~ N(0, V).

    V is verified positive definite at construction; its lower factor is kept.
    """
    v: np.ndarray
    beta_true: np.ndarray
    intercept_true: float
    noise_sd: float
    label: str
    factor: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v = _frozen(self.v)
        beta = _frozen(self.beta_true)
        p = beta.shape[0]
        if v.shape != (p, p):
            raise DimensionMismatch("Covariance does not match coefficient length", p=p, v=list(v.shape))
        if not np.allclose(v, v.T, atol=1e-12):
            raise ValidationError("Covariance matrix must be symmetric", code="NOT_SYMMETRIC")
        if self.noise_sd < 0:
            raise ValidationError("Noise standard deviation must be non-negative", code="BAD_NOISE")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "beta_true", beta)
        object.__setattr__(self, "intercept_true", float(self.intercept_true))
        object.__setattr__(self, "noise_sd", float(self.noise_sd))
        object.__setattr__(self, "factor", _frozen(lower_factor(v)))

    @property
    def p(self) -> int:
        return self.beta_true.shape[0]

    @property
    def truth(self) -> SparseCoefficients:
        return SparseCoefficients(self.intercept_true, self.beta_true)

    def signal_moment(self) -> float:
        """E|f(X)|^2 = intercept^2 + beta^T V beta."""
        return self.intercept_true ** 2 + float(quadratic_form(self.beta_true, self.v))

    def snr(self) -> float:
        return self.signal_moment() / self.noise_sd ** 2


@dataclass(frozen=True)
class BenchmarkCell:
    """Aggregate of one (setting, method) pair over replications."""
    setting: str
    method: str
    tuning: str
    mean: float
    se: float
    count: int
    failures: int = 0


@dataclass(frozen=True)
class ReplicationRecord:
    setting: str
    method: str
    tuning: str
    rep: int
    mse: float
    active: Optional[int] = None


@dataclass
class BenchmarkReport:
    """Long-format replication records plus the per-cell summary."""
    cells: List[BenchmarkCell]
    records: List[ReplicationRecord]
    header: Dict[str, str]
    failures: List[Tuple[str, str, int, str]] = field(default_factory=list)

    def cell(self, setting: str, method: str) -> Optional[BenchmarkCell]:
        for c in self.cells:
            if c.setting == setting and c.method == method:
                return c
        return None


@dataclass(frozen=True)
class Setting:
    """
    Named benchmark setting: sample size plus a model factory.

    The factory receives the replication seed; fixed models ignore it.
    """
    label: str
    n: int
    factory: Callable[[int], SimulationModel]

    def model(self, seed: int) -> SimulationModel:
        return self.factory(seed)
