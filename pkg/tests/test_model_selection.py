"""Tests for the boosting hat matrix, information criteria, stopping and folds."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from l2boost.exceptions import (
    BadFoldCount,
    DegenerateDenominator,
    NoValidIteration,
    ValidationError,
    ZeroColumn,
    ZeroSigma,
)
from l2boost.models.boosting import HatState
from l2boost.models.configs import BoostConfig
from l2boost.models.dataset import Dataset
from l2boost.models.enums import StoppingRule, Variant
from l2boost.models.simulation import SimulationModel
from l2boost.services.boosting import boost_fit, coefficients_at, mse_curve
from l2boost.services.design import exact_mse, standardize
from l2boost.services.model_selection import (
    BERNOULLI_DELTA,
    aic_bernoulli,
    aicc,
    aicc_curve,
    hat_trace_path,
    hat_update,
    kfold_split,
    oracle_stop,
    select_m,
    setting_oracle,
    stop_aic_bernoulli,
    stop_aicc,
)
from l2boost.services.simulation_models import draw_dataset
from tests.helpers import design_from_columns, orthonormal_design


# Hat matrix

def test_first_update_trace_is_nu(rng):
    state = hat_update(HatState.initial(6), rng.standard_normal(6), 0.1)
    assert state.trace == pytest.approx(0.1)
    assert state.m == 1


def test_single_column_nu_one_is_projection(rng):
    x = rng.standard_normal(7)
    state = HatState.initial(7)
    for _ in range(4):
        hat_update(state, x, 1.0)
    np.testing.assert_allclose(state.b, np.outer(x, x) / (x @ x), atol=1e-12)
    assert state.trace == pytest.approx(1.0)


def test_zero_column_is_rejected():
    with pytest.raises(ZeroColumn):
        hat_update(HatState.initial(3), np.zeros(3), 0.5)


def test_incremental_matches_product_form(rng):
    """30 steps on n = 8 agree entrywise with I - prod (I - nu H_i)."""
    s = standardize(Dataset(rng.standard_normal((8, 5)), rng.standard_normal(8)))
    nu = 0.3
    path = boost_fit(s, BoostConfig(nu=nu, m_max=30))
    traces, state = hat_trace_path(path)

    product = np.eye(8)
    for j in path.indices:
        x = s.g[:, j]
        product = (np.eye(8) - nu * np.outer(x, x) / (x @ x)) @ product
    explicit = np.eye(8) - product
    assert np.max(np.abs(state.b - explicit)) < 1e-10
    assert traces[-1] == pytest.approx(np.trace(state.b), abs=1e-10)


@given(seed=st.integers(0, 10_000), nu=st.sampled_from([0.1, 0.5, 1.0]))
@settings(max_examples=100, deadline=None)
def test_property_hat_fit_consistency(seed, nu):
    """
    Property: B_m y equals the boosting fit on the training rows at every m.
    """
    rng = np.random.default_rng(seed)
    n, p = 12, 5
    s = standardize(Dataset(rng.standard_normal((n, p)), rng.standard_normal(n)))
    path = boost_fit(s, BoostConfig(nu=nu, m_max=25))
    state = HatState.initial(n)
    for m, j in enumerate(path.indices, start=1):
        hat_update(state, s.g[:, j], nu)
        fitted = s.g @ path.theta_at(m)
        assert np.max(np.abs(state.b @ s.y_centered - fitted)) < 1e-8
        assert state.trace == pytest.approx(float(np.sum(np.diag(state.b))), abs=1e-10)


def test_orthonormal_nu_one_trace_counts_columns():
    g = orthonormal_design(10, 3, seed=4)
    s = design_from_columns(g, g @ np.array([3.0, 2.0, 1.0]) + 0.01 * orthonormal_design(10, 4, seed=5)[:, 3])
    path = boost_fit(s, BoostConfig(nu=1.0, m_max=3))
    traces, _ = hat_trace_path(path)
    np.testing.assert_allclose(traces, [1.0, 2.0, 3.0], atol=1e-10)


def test_hat_trace_requires_l2boost(small_design):
    path = boost_fit(small_design, BoostConfig(m_max=5, variant=Variant.FSLR))
    with pytest.raises(ValidationError) as exc_info:
        hat_trace_path(path)
    assert exc_info.value.code == "NO_HAT_MATRIX"


# Information criteria

def test_aicc_null_fit_arithmetic():
    assert aicc(20.0, 0.0, 20) == pytest.approx(1.0 / 0.9)


def test_aicc_boundaries():
    with pytest.raises(DegenerateDenominator):
        aicc(1.0, 18.0, 20)
    with pytest.raises(ZeroSigma):
        aicc(0.0, 1.0, 20)


def test_aicc_increasing_in_trace():
    values = [aicc(5.0, t, 20) for t in np.linspace(0.0, 17.5, 30)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_aicc_curve_masks_invalid_entries():
    values, valid = aicc_curve(np.array([5.0, 4.0, 0.0, 3.0]), np.array([1.0, 2.0, 3.0, 18.0]), 20)
    assert valid.tolist() == [True, True, False, False]
    assert np.isinf(values[2]) and np.isinf(values[3])
    assert values[1] == pytest.approx(aicc(4.0, 2.0, 20))


def test_aic_bernoulli_coin_flip():
    y = np.array([0.0, 1.0, 1.0, 0.0])
    assert aic_bernoulli(y, np.full(4, 0.5), 0.0) == pytest.approx(-8.0 * math.log(0.5))


def test_aic_bernoulli_perfect_fit_is_clamped():
    y = np.array([0.0, 1.0, 1.0, 0.0, 1.0])
    value = aic_bernoulli(y, y, 0.0)
    assert value == pytest.approx(-2.0 * 5 * math.log(1.0 - BERNOULLI_DELTA))
    assert value < 1e-4


def test_aic_bernoulli_matches_direct_sum(rng):
    y = (rng.random(30) < 0.4).astype(float)
    fitted = rng.uniform(-0.2, 1.2, 30)
    p = [min(max(f, BERNOULLI_DELTA), 1 - BERNOULLI_DELTA) for f in fitted]
    loglik = sum(yi * math.log(pi) + (1 - yi) * math.log(1 - pi) for yi, pi in zip(y, p))
    assert aic_bernoulli(y, fitted, 2.5) == pytest.approx(-2.0 * loglik + 5.0, abs=1e-12, rel=1e-12)


# Selection

def test_select_m_minimum_and_ties():
    assert select_m(np.array([3.0, 1.0, 2.0])).m_hat == 2
    assert select_m(np.array([1.0, 1.0, 5.0])).m_hat == 1


def test_select_m_skips_invalid_and_fails_when_empty():
    result = select_m(np.array([0.5, 2.0, 1.0]), np.array([False, True, True]))
    assert result.m_hat == 3
    with pytest.raises(NoValidIteration):
        select_m(np.array([np.inf, np.inf]))


def test_stop_aicc_interior_minimum(three_effect_data):
    """The criterion falls, reaches an interior minimum and rises again."""
    path = boost_fit(standardize(three_effect_data), BoostConfig(m_max=1000))
    result, annotated = stop_aicc(path)
    assert result.rule is StoppingRule.AICC
    assert 1 < result.m_hat < path.m_total
    values = result.criterion_values
    finite = values[np.isfinite(values)]
    assert values[0] > values[result.m_hat - 1]
    assert finite[-1] > values[result.m_hat - 1]
    assert int(np.argmin(np.where(result.valid, values, np.inf))) + 1 == result.m_hat
    assert annotated.traces is not None and annotated.criterion is not None


def test_stop_aic_bernoulli_selects_valid_iteration(rng):
    x = rng.standard_normal((40, 3))
    y = (x[:, 0] + 0.5 * rng.standard_normal(40) > 0).astype(float)
    path = boost_fit(standardize(Dataset(x, y)), BoostConfig(m_max=200))
    result, _ = stop_aic_bernoulli(path, y)
    assert result.rule is StoppingRule.AIC_BERNOULLI
    assert 1 <= result.m_hat <= 200


def test_oracle_stop_is_curve_minimum(three_effect_p10, three_effect_data):
    path = boost_fit(standardize(three_effect_data), BoostConfig(m_max=300))
    result = oracle_stop(path, three_effect_p10)
    curve = mse_curve(path, three_effect_p10)
    assert result.m_hat == int(np.argmin(curve))
    best = exact_mse(coefficients_at(path, result.m_hat), three_effect_p10.truth, three_effect_p10.v)
    assert best <= curve[0]


def test_oracle_stop_prefers_small_m_for_null_truth():
    model = SimulationModel(np.eye(5), np.zeros(5), 0.0, 1.0, "null")
    path = boost_fit(standardize(draw_dataset(model, 30, 11)), BoostConfig(m_max=200))
    result = oracle_stop(path, model)
    assert result.m_hat < 100
    assert result.criterion_values[result.m_hat] <= result.criterion_values[0]


def test_setting_oracle_averages_padded_curves():
    oracle = setting_oracle([np.array([3.0, 1.0, 2.0]), np.array([1.0, 2.0])])
    np.testing.assert_allclose(oracle.mean, [2.0, 1.5, 2.0])
    assert oracle.index == 1
    np.testing.assert_allclose(oracle.mses, [1.0, 2.0])


def test_setting_oracle_breaks_ties_towards_small_index():
    assert setting_oracle([np.array([2.0, 1.0, 1.0])]).index == 1


def test_setting_oracle_needs_curves():
    with pytest.raises(ValidationError):
        setting_oracle([])


# Folds

def test_leave_one_out_partition():
    folds = kfold_split(10, 10, seed=0)
    assert sorted(folds.tolist()) == list(range(10))


def test_stratified_fold_balance():
    labels = np.array([0] * 5 + [1] * 4)
    folds = kfold_split(9, 3, seed=3, stratify_labels=labels)
    for f in range(3):
        ones = int(np.sum(labels[folds == f]))
        assert 1 <= ones <= 2
        assert 2 <= int(np.sum(folds == f)) <= 4


@given(n=st.integers(2, 60), k=st.integers(2, 10), seed=st.integers(0, 1000))
@settings(max_examples=100, deadline=None)
def test_property_fold_sizes(n, k, seed):
    """
    Property: fold sizes differ by at most one and assignments are seed-deterministic.
    """
    if k > n:
        with pytest.raises(BadFoldCount):
            kfold_split(n, k, seed)
        return
    folds = kfold_split(n, k, seed)
    sizes = np.bincount(folds, minlength=k)
    assert sizes.max() - sizes.min() <= 1
    np.testing.assert_array_equal(folds, kfold_split(n, k, seed))


def test_fold_seeds_differ():
    assert not np.array_equal(kfold_split(50, 5, seed=1), kfold_split(50, 5, seed=2))


def test_bad_fold_count():
    with pytest.raises(BadFoldCount):
        kfold_split(5, 1, seed=0)
