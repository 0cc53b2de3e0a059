"""Containers for base-learner fits, boosting paths and stopping decisions."""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from l2boost.models.dataset import StandardizedDesign
from l2boost.models.enums import StoppingRule, Variant


@dataclass(frozen=True)
class BaseFit:
    """One componentwise least-squares fit. Indices are 0-based."""
    index: int
    coefficient: float
    rss_after: float
    correlation: float


@dataclass(frozen=True)
class BoostPath:
    """
    Per-iteration record of a boosting run.

    Entry k of indices/increments/rss describes iteration m = k + 1.
    rss_initial is the residual sum of squares of the centered response.
    Increments live on the standardized scale of `design`.
    """
    design: StandardizedDesign
    nu: float
    variant: Variant
    indices: np.ndarray
    increments: np.ndarray
    rss: np.ndarray
    rss_initial: float
    stopped_early: bool = False
    traces: Optional[np.ndarray] = None
    criterion: Optional[np.ndarray] = None

    @property
    def m_total(self) -> int:
        return int(self.indices.shape[0])

    def theta_at(self, m: int) -> np.ndarray:
        """Standardized-scale coefficients after m iterations (no range check)."""
        return np.bincount(self.indices[:m], weights=self.increments[:m], minlength=self.design.p)

    def with_criterion(self, traces: np.ndarray, criterion: Optional[np.ndarray]) -> "BoostPath":
        return replace(self, traces=traces, criterion=criterion)


@dataclass
class HatState:
    """
    Boosting hat matrix B_m, updated in place by its single owner.

    B_m is not symmetric in general.
    """
    b: np.ndarray
    trace: float = 0.0
    m: int = 0

    @classmethod
    def initial(cls, n: int) -> "HatState":
        return cls(b=np.zeros((n, n)))


@dataclass(frozen=True)
class StoppingResult:
    """
    Selected iteration and the criterion it minimizes.

    criterion_values[k] belongs to iteration m = k + first_m.
    """
    m_hat: int
    criterion_values: np.ndarray
    rule: StoppingRule
    valid: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    first_m: int = 1


@dataclass(frozen=True)
class SettingOracle:
    """
    One grid index shared by every replication of a setting.

    mses[r] is replication r's exact MSE at that index; mean is the
    replication-averaged curve the index minimizes.
    """
    index: int
    mses: np.ndarray
    mean: np.ndarray
