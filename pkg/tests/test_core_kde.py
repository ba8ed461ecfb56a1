import numpy as np
import pytest

from sbibench.core.kde import kde_fit


def test_degenerate_centers_fallback():
    x = np.tile([2.0, -1.0], (50, 1))
    with pytest.warns(RuntimeWarning):
        kde = kde_fit(x)
    s = kde.sample(1000, np.random.default_rng(0))
    # jitter sd is sqrt(1e-6) * scott factor; stay within 5 sd of the center
    sd = np.sqrt(1e-6) * 50 ** (-1 / 6)
    assert np.all(np.abs(s - np.array([2.0, -1.0])) < 5 * sd)


def test_logpdf_integrates_to_one_2d():
    pts = np.random.default_rng(1).normal(size=(100, 2))
    kde = kde_fit(pts)
    xs = np.linspace(-6, 6, 241)
    ys = np.linspace(-6, 6, 241)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    grid = np.column_stack([xx.ravel(), yy.ravel()])
    dens = np.exp(kde.logpdf(grid)).reshape(241, 241)
    integral = np.trapezoid(np.trapezoid(dens, ys, axis=1), xs)
    assert integral == pytest.approx(1.0, abs=0.01)


def test_sample_variance_reflects_bandwidth_inflation():
    n = 1000
    pts = np.random.default_rng(2).normal(size=(n, 1))
    kde = kde_fit(pts)
    s = kde.sample(100_000, np.random.default_rng(3))
    # resampled variance = (1 + scott^2) * fitted variance
    scott2 = n ** (-2.0 / 5.0)
    expected = (1 + scott2) * pts.var()
    assert 1.0 < s.var() < 1.3
    assert s.var() == pytest.approx(expected, rel=0.03)


def test_equal_weights_match_unweighted_exactly():
    pts = np.random.default_rng(4).normal(size=(200, 3))
    a = kde_fit(pts)
    b = kde_fit(pts, weights=np.full(200, 1.0 / 200))
    c = kde_fit(pts, weights=np.full(200, 7.0))  # unnormalized equal weights
    assert np.array_equal(a.bandwidth_chol, b.bandwidth_chol)
    assert np.array_equal(a.bandwidth_chol, c.bandwidth_chol)
    assert np.array_equal(a.centers, b.centers)
    assert np.array_equal(a.weights, c.weights)


def test_logpdf_finite_at_centers():
    pts = np.random.default_rng(5).normal(size=(150, 4))
    kde = kde_fit(pts)
    lp = kde.logpdf(pts)
    assert np.all(np.isfinite(lp))


def test_weighted_fit_shifts_mass():
    pts = np.vstack([np.zeros((50, 1)), np.ones((50, 1))])
    w = np.concatenate([np.full(50, 0.9 / 50), np.full(50, 0.1 / 50)])
    kde = kde_fit(pts, weights=w)
    s = kde.sample(20_000, np.random.default_rng(6))
    near_zero = np.mean(np.abs(s - 0.0) < 0.4)
    assert near_zero == pytest.approx(0.9, abs=0.05)


def test_invalid_weights_raise():
    pts = np.random.default_rng(7).normal(size=(10, 1))
    with pytest.raises(ValueError):
        kde_fit(pts, weights=np.full(10, -1.0))
    with pytest.raises(ValueError):
        kde_fit(pts, weights=np.zeros(10))
