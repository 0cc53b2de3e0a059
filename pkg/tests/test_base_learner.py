"""Tests for the componentwise least-squares base procedure."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from l2boost.exceptions import DimensionMismatch, EmptyDesign
from l2boost.models.dataset import Dataset, StandardizedDesign
from l2boost.services.base_learner import componentwise_ls
from l2boost.services.design import standardize
from tests.helpers import design_from_columns


def test_zero_residuals_pick_first_column(small_design):
    fit = componentwise_ls(small_design, np.zeros(small_design.n))
    assert fit.index == 0
    assert fit.coefficient == 0.0
    assert fit.rss_after == 0.0


def test_single_column_exact_fit():
    """g1 = (-1, 1), u = (-2, 2) gives beta = 2."""
    g = design_from_columns(np.array([[-1.0], [1.0]]), np.array([-2.0, 2.0]))
    fit = componentwise_ls(g, np.array([-2.0, 2.0]))
    assert fit.index == 0
    assert fit.coefficient == pytest.approx(2.0)
    assert fit.rss_after == pytest.approx(0.0)


def test_matches_exhaustive_scan(rng):
    s = standardize(Dataset(rng.standard_normal((4, 3)), rng.standard_normal(4)))
    u = rng.standard_normal(4)
    fit = componentwise_ls(s, u)

    rss = []
    for j in range(3):
        col = s.g[:, j]
        beta = float(col @ u) / float(col @ col)
        rss.append(float(np.sum((u - beta * col) ** 2)))
    best = int(np.argmin(rss))
    assert fit.index == best
    assert fit.coefficient == pytest.approx(float(s.g[:, best] @ u) / 4)
    assert fit.rss_after == pytest.approx(rss[best], abs=1e-10)


def test_empty_design_is_rejected():
    g = StandardizedDesign(
        g=np.zeros((3, 0)), centers=np.zeros(0), scales=np.zeros(0),
        y_center=0.0, y_centered=np.zeros(3),
    )
    with pytest.raises(EmptyDesign):
        componentwise_ls(g, np.zeros(3))


def test_residual_length_is_checked(small_design):
    with pytest.raises(DimensionMismatch):
        componentwise_ls(small_design, np.zeros(small_design.n + 1))


@given(seed=st.integers(0, 10_000), c=st.floats(-100, 100).filter(lambda c: abs(c) > 1e-3))
@settings(max_examples=50, deadline=None)
def test_property_scale_equivariance(seed, c):
    """
    Property: scaling the residuals by c keeps the selected column and
    scales the coefficient by c.
    """
    rng = np.random.default_rng(seed)
    s = standardize(Dataset(rng.standard_normal((12, 5)), rng.standard_normal(12)))
    u = rng.standard_normal(12)
    base = componentwise_ls(s, u)
    scaled = componentwise_ls(s, c * u)
    assert scaled.index == base.index
    assert scaled.coefficient == pytest.approx(c * base.coefficient, rel=1e-9)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_property_rss_identity_and_permutation(seed):
    """
    Property: rss_after = |u|^2 - n beta^2, never above the input RSS, and
    the selection follows a column permutation.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((9, 6))
    s = standardize(Dataset(x, rng.standard_normal(9)))
    u = rng.standard_normal(9)
    fit = componentwise_ls(s, u)
    assert fit.rss_after == pytest.approx(float(u @ u) - 9 * fit.coefficient ** 2, abs=1e-10)
    assert fit.rss_after <= float(u @ u) + 1e-12

    perm = rng.permutation(6)
    permuted = componentwise_ls(standardize(Dataset(x[:, perm], s.y_centered)), u)
    assert perm[permuted.index] == fit.index
