"""Tests for the generative models and data draws."""

import numpy as np
import pytest

from l2boost.exceptions import FixedPointFailure, InputFormatError, NotPositiveDefinite, ValidationError
from l2boost.models.enums import Covariance
from l2boost.models.simulation import SimulationModel
from l2boost.services.simulation_models import (
    BAND_B,
    BAND_C,
    DECAY_EXPONENT,
    banded_covariance,
    decaying_dimension,
    decaying_variances,
    draw_dataset,
    make_decaying_model,
    make_dense_model,
    make_three_effect_model,
    solve_kappa,
)


def test_identity_three_effect_moments():
    model = make_three_effect_model(3, Covariance.IDENTITY)
    np.testing.assert_array_equal(model.beta_true, [5.0, 2.0, 1.0])
    assert model.intercept_true == 1.0
    assert model.noise_sd == 2.0
    assert model.signal_moment() == pytest.approx(31.0)
    assert model.snr() == pytest.approx(31.0 / 4.0)


def test_banded_entries_and_padding():
    model = make_three_effect_model(10, Covariance.BLOCK)
    assert model.v[0, 2] == BAND_C == 0.323
    assert model.v[0, 1] == BAND_B == 0.677
    assert model.v[0, 3] == 0.0
    assert np.all(model.beta_true[3:] == 0)


@pytest.mark.parametrize("p", [3, 10, 100])
def test_snr_parity_between_covariances(p):
    ratio = make_three_effect_model(p, Covariance.BLOCK).snr() / make_three_effect_model(p, Covariance.IDENTITY).snr()
    assert abs(ratio - 1.0) <= 0.02


def test_banded_covariance_fails_factorization_when_large():
    with pytest.raises(NotPositiveDefinite):
        make_three_effect_model(120, Covariance.BLOCK)


def test_three_effect_needs_three_columns():
    with pytest.raises(InputFormatError):
        make_three_effect_model(2)


def test_model_rejects_asymmetric_covariance():
    v = np.eye(3)
    v[0, 1] = 0.5
    with pytest.raises(ValidationError):
        SimulationModel(v, np.zeros(3), 0.0, 1.0, "bad")


def test_kappa_fixed_point_constants():
    kappa = solve_kappa(100, 1.0)
    assert kappa == pytest.approx(0.199, abs=1e-3)
    assert decaying_dimension(kappa) == 23


def test_kappa_zero_noise():
    assert solve_kappa(100, 0.0) == 0.0
    with pytest.raises(FixedPointFailure):
        decaying_dimension(0.0)


def test_kappa_matches_grid_scan():
    n = 100
    grid = np.linspace(0.15, 0.25, 1_000_001)
    a = np.arange(1, 200, dtype=float) ** DECAY_EXPONENT
    rhs = np.array([
        np.sum(a * np.maximum(1.0 - k * a, 0.0)) / n for k in grid[::1000]
    ])
    coarse = grid[::1000][int(np.argmin(np.abs(rhs - grid[::1000])))]
    window = grid[np.abs(grid - coarse) <= 2e-4]
    rhs_fine = (a[None, :] * np.maximum(1.0 - window[:, None] * a[None, :], 0.0)).sum(axis=1) / n
    root = window[int(np.argmin(np.abs(rhs_fine - window)))]
    assert solve_kappa(n, 1.0) == pytest.approx(root, abs=1e-6)


def test_decaying_variances_formula():
    kappa = solve_kappa(100, 1.0)
    variances = decaying_variances(100, 1.0)
    a = np.arange(1, 24, dtype=float) ** DECAY_EXPONENT
    expected = (1.0 - kappa * a) / (100 * kappa * a)
    np.testing.assert_allclose(variances, expected, rtol=1e-12)
    assert np.all(np.diff(variances) < 0)


@pytest.mark.parametrize("n", [5000, 20000])
def test_decaying_model_at_large_sample_sizes(n):
    variances = decaying_variances(n, 1.0)
    a = np.arange(1, variances.shape[0] + 1, dtype=float) ** DECAY_EXPONENT
    # the fixed point makes sum_j a_j^2 sigma_j^2 equal to one
    assert np.sum(a ** 2 * variances) == pytest.approx(1.0, rel=1e-8)
    assert variances.shape[0] > 23
    assert make_decaying_model(n, 1.0, seed=0).p == variances.shape[0]


def test_decaying_model_redraws_beta_per_seed():
    a = make_decaying_model(100, 1.0, seed=1)
    b = make_decaying_model(100, 1.0, seed=2)
    assert a.p == b.p == 23
    assert not np.array_equal(a.beta_true, b.beta_true)
    np.testing.assert_array_equal(a.beta_true, make_decaying_model(100, 1.0, seed=1).beta_true)
    np.testing.assert_array_equal(a.v, np.eye(23))


def test_dense_model_moments():
    model = make_dense_model()
    np.testing.assert_array_equal(model.beta_true, np.full(100, 0.2))
    assert model.intercept_true == 0.2
    assert model.noise_sd == 0.5
    ones = np.ones(100)
    assert model.signal_moment() == pytest.approx(0.04 + 0.04 * ones @ banded_covariance(100) @ ones)

    d = draw_dataset(model, 200_000, seed=4)
    f = model.intercept_true + d.x @ model.beta_true
    assert abs(f.mean() - 0.2) < 3 * f.std() / np.sqrt(f.size)
    se = (f ** 2).std() / np.sqrt(f.size)
    assert abs(np.mean(f ** 2) - model.signal_moment()) < 3 * se


def test_draw_dataset_deterministic(three_effect_p10):
    a = draw_dataset(three_effect_p10, 20, seed=9)
    b = draw_dataset(three_effect_p10, 20, seed=9)
    np.testing.assert_array_equal(a.x, b.x)
    np.testing.assert_array_equal(a.y, b.y)
    assert not np.array_equal(a.y, draw_dataset(three_effect_p10, 20, seed=10).y)


def test_draw_dataset_identity_moments():
    model = make_three_effect_model(3, Covariance.IDENTITY)
    n = 100_000
    d = draw_dataset(model, n, seed=1)
    cov = d.x.T @ d.x / n
    # diagonal entries have sd sqrt(2 / n)
    assert np.max(np.abs(cov - np.eye(3))) < 4 * np.sqrt(2.0 / n)
    assert np.max(np.abs(d.x.mean(axis=0))) < 4 / np.sqrt(n)


def test_draw_dataset_noiseless_is_linear():
    model = SimulationModel(np.eye(3), np.array([1.0, -1.0, 2.0]), 0.5, 0.0, "noiseless")
    d = draw_dataset(model, 15, seed=0)
    np.testing.assert_allclose(d.y, 0.5 + d.x @ model.beta_true, atol=1e-12)
