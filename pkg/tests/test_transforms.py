"""
Tests for Yeo-Johnson and PCA transforms.
"""

import math
import os
import sys

import numpy as np
import pytest
from scipy import stats

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from common.errors import ConfigError, InsufficientDataError
from feature_store.transforms import (
    LAMBDA_GRID,
    apply_yeo_johnson,
    fit_lambda,
    jacobi_eigh,
    pca_fit,
    pca_transform,
    yeo_johnson,
)


def test_yeo_johnson_identity_and_logs():
    x = np.array([-3.0, -0.5, 0.0, 0.5, 7.0])
    assert yeo_johnson(x, 1.0) == pytest.approx(x)
    assert yeo_johnson(np.array([math.e - 1]), 0.0)[0] == pytest.approx(1.0)
    assert yeo_johnson(np.array([-(math.e - 1)]), 2.0)[0] == pytest.approx(-1.0)


@pytest.mark.parametrize("lam", [-2.0, -0.7, 0.0, 0.5, 1.3, 2.0])
def test_yeo_johnson_matches_scipy(lam):
    x = np.random.default_rng(0).normal(scale=3.0, size=200)
    assert yeo_johnson(x, lam) == pytest.approx(stats.yeojohnson(x, lmbda=lam), abs=1e-10)


def test_yeo_johnson_is_monotone():
    x = np.linspace(-10, 10, 101)
    for lam in LAMBDA_GRID:
        assert np.all(np.diff(yeo_johnson(x, lam)) > 0)


def test_fit_lambda_picks_grid_maximum():
    x = np.random.default_rng(1).lognormal(size=500)
    best = LAMBDA_GRID[int(np.argmax([stats.yeojohnson_llf(lam, x) for lam in LAMBDA_GRID]))]
    assert fit_lambda(x) == pytest.approx(best)
    assert fit_lambda(x) < 1.0


def test_fit_lambda_constant_column():
    assert fit_lambda(np.full(10, 3.0)) == 1.0
    with pytest.raises(InsufficientDataError):
        fit_lambda(np.array([]))


def test_apply_yeo_johnson_checks_width():
    with pytest.raises(ConfigError):
        apply_yeo_johnson(np.zeros((3, 2)), [1.0])


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(6, 6))
    symmetric = a + a.T
    values, vectors = jacobi_eigh(symmetric)
    assert np.sort(values) == pytest.approx(np.linalg.eigvalsh(symmetric), abs=1e-9)
    assert symmetric @ vectors == pytest.approx(vectors * values, abs=1e-9)


def test_pca_rank_one_line():
    t = np.linspace(-2, 3, 20)
    points = np.column_stack([t, 2 * t])
    projection = pca_fit(points, 1)
    assert projection.axes[0] == pytest.approx(np.array([1.0, 2.0]) / math.sqrt(5))
    assert projection.eigenvalues[1] == pytest.approx(0.0, abs=1e-12)


def test_pca_full_rank_is_isometry():
    x = np.random.default_rng(3).normal(size=(30, 4))
    projection = pca_fit(x, 4)
    reduced = pca_transform(projection, x)
    reconstructed = reduced @ projection.axes + projection.mean
    assert reconstructed == pytest.approx(x, abs=1e-10)
    centered = x - x.mean(axis=0)
    assert np.linalg.norm(reduced, axis=1) == pytest.approx(np.linalg.norm(centered, axis=1), abs=1e-10)


def test_pca_matches_dense_eigendecomposition():
    x = np.random.default_rng(4).normal(size=(50, 6)) @ np.diag([5, 4, 3, 2, 1, 0.5])
    projection = pca_fit(x, 3)
    values, vectors = np.linalg.eigh(np.cov(x, rowvar=False))
    order = np.argsort(-values)
    assert projection.eigenvalues == pytest.approx(values[order], abs=1e-8)
    for j in range(3):
        oracle = vectors[:, order[j]]
        sign = 1.0 if np.dot(oracle, projection.axes[j]) > 0 else -1.0
        assert projection.axes[j] == pytest.approx(sign * oracle, abs=1e-8)


def test_pca_axis_signs_are_fixed():
    x = np.random.default_rng(5).normal(size=(40, 5))
    projection = pca_fit(x, 5)
    for axis in projection.axes:
        assert axis[int(np.argmax(np.abs(axis)))] > 0


def test_pca_errors():
    x = np.random.default_rng(6).normal(size=(10, 3))
    with pytest.raises(ConfigError):
        pca_fit(x, 4)
    with pytest.raises(InsufficientDataError):
        pca_fit(np.ones((5, 3)), 2)
