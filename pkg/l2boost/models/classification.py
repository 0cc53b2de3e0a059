"""Results of the classification harness."""

from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class CvResult:
    """Repeated-split misclassification summary."""
    rate: float
    per_repeat: np.ndarray
    m_hats: np.ndarray
    # Mean test error at each iteration, averaged over repeats
    error_curve: np.ndarray

    @property
    def se(self) -> float:
        r = self.per_repeat.shape[0]
        return float(np.std(self.per_repeat, ddof=1) / np.sqrt(r)) if r > 1 else 0.0

    @property
    def best_curve_rate(self) -> float:
        return float(np.min(self.error_curve))

    @property
    def mean_m_hat(self) -> float:
        return float(np.mean(self.m_hats))


@dataclass(frozen=True)
class ScaledCoefficient:
    name: str
    index: int
    coefficient: float
    scaled: float
    wilcoxon_rank: int = 0


@dataclass(frozen=True)
class GeneRanking:
    """Centered rank-sum statistics; ranks[j] is 1 for the strongest gene."""
    statistics: np.ndarray
    ranks: np.ndarray
    order: np.ndarray
    gene_names: Tuple[str, ...]


@dataclass(frozen=True)
class RiskPoint:
    n: int
    mean_excess: float
    se_excess: float
    bayes_risk: float
