"""Pytest configuration and fixtures for tests."""

import numpy as np
import pytest

from l2boost.models.dataset import Dataset, StandardizedDesign
from l2boost.models.enums import Covariance
from l2boost.services.design import standardize
from l2boost.services.simulation_models import draw_dataset, make_three_effect_model


@pytest.fixture
def rng():
    """Fresh generator with a fixed seed for test-local randomness."""
    return np.random.default_rng(12345)


@pytest.fixture
def small_dataset(rng) -> Dataset:
    """10 x 4 Gaussian design with a sparse linear response."""
    x = rng.standard_normal((10, 4))
    y = 1.0 + 2.0 * x[:, 0] - x[:, 2] + 0.1 * rng.standard_normal(10)
    return Dataset(x, y)


@pytest.fixture
def small_design(small_dataset) -> StandardizedDesign:
    return standardize(small_dataset)


@pytest.fixture
def three_effect_p10():
    return make_three_effect_model(10, Covariance.IDENTITY)


@pytest.fixture
def three_effect_data(three_effect_p10) -> Dataset:
    """n = 20 draw from the three-effect model with p = 10."""
    return draw_dataset(three_effect_p10, 20, seed=7)
