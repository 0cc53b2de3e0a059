"""Validated configuration objects for the estimators."""

from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from l2boost.models.enums import Variant


class BoostConfig(BaseModel):
    """Step size, iteration cap and update rule for boosting."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    nu: float = Field(0.1, gt=0.0, le=1.0, description="Step size (shrinkage)")
    m_max: int = Field(5000, ge=1, description="Maximum number of iterations")
    variant: Variant = Variant.L2BOOST
    resync_every: int = Field(500, ge=1, description="Residual recomputation period")


def _geometric(low: float, high: float, num: int) -> List[float]:
    return np.geomspace(low, high, num).tolist()


class RidgeConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    lambda_grid: List[float] = Field(default_factory=lambda: _geometric(1e-4, 1e4, 50))
    folds: int = Field(10, ge=2)

    @field_validator("lambda_grid")
    @classmethod
    def validate_grid(cls, v):
        """Grid must be non-empty, positive and ascending."""
        if not v:
            raise ValueError("lambda_grid must not be empty")
        if any(lam <= 0 for lam in v):
            raise ValueError("lambda_grid entries must be positive")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("lambda_grid must be sorted ascending")
        return v


class LassoConfig(BaseModel):
    """Path length and convergence settings; the grid itself depends on the data."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_lambda: int = Field(100, ge=2)
    lambda_min_ratio: float = Field(1e-3, gt=0.0, lt=1.0)
    tol: float = Field(1e-8, gt=0.0)
    max_sweeps: int = Field(10_000, ge=1)
    folds: int = Field(10, ge=2)


class CvScheme(BaseModel):
    """Repeated stratified train/test splitting for classification."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    train_fraction: float = Field(2.0 / 3.0, gt=0.0, lt=1.0)
    repeats: int = Field(50, ge=1)
    seed: int = Field(0, ge=0)
    stratified: bool = True
