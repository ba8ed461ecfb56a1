import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sbibench.core.priors import (
    BoxUniformPrior,
    DiagGaussianPrior,
    IndepLogNormalPrior,
    StructuredGaussianPrior,
)
from sbibench.core.transforms import build_transform


def test_box_midpoint_maps_to_zero():
    tf = build_transform(BoxUniformPrior([-1.0], [1.0]))
    assert tf.forward(np.array([0.0]))[0] == pytest.approx(0.0, abs=1e-12)
    # logit((0.5 - (-1)) / 2) = logit(0.75) = log 3
    assert tf.forward(np.array([0.5]))[0] == pytest.approx(np.log(3.0))


def test_log_transform_unit_maps_to_zero():
    tf = build_transform(IndepLogNormalPrior([0.0], [1.0]))
    assert tf.forward(np.array([1.0]))[0] == pytest.approx(0.0)


def test_gaussian_prior_gets_identity():
    tf = build_transform(DiagGaussianPrior(np.zeros(3), np.ones(3)))
    assert tf.is_identity
    tf2 = build_transform(StructuredGaussianPrior(np.eye(2), 1.0))
    assert tf2.is_identity


def _roundtrip_points(prior, n=1000):
    return prior.sample(n, np.random.default_rng(11))


@pytest.mark.parametrize(
    "prior",
    [
        BoxUniformPrior(-np.ones(4), np.ones(4)),
        BoxUniformPrior([0.0, -3.0], [10.0, 3.0]),
        IndepLogNormalPrior([0.0, -2.0], [0.5, 0.2]),
        DiagGaussianPrior(np.zeros(2), [0.1, 3.0]),
    ],
)
def test_roundtrip_identity(prior):
    tf = build_transform(prior)
    theta = _roundtrip_points(prior)
    back = tf.inverse(tf.forward(theta))
    assert np.max(np.abs(theta - back)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.999, max_value=0.999))
def test_roundtrip_property_box(x):
    tf = build_transform(BoxUniformPrior([-1.0], [1.0]))
    assert abs(tf.inverse(tf.forward(np.array([x])))[0] - x) < 1e-10


def test_log_abs_det_matches_finite_differences():
    rng = np.random.default_rng(3)
    for prior in [
        BoxUniformPrior([-2.0, 1.0], [3.0, 4.0]),
        IndepLogNormalPrior([0.0, 1.0], [0.5, 0.25]),
    ]:
        tf = build_transform(prior)
        theta = prior.sample(200, rng)
        h = 1e-6
        fd_logdet = np.zeros(theta.shape[0])
        for d in range(theta.shape[1]):
            tp, tm = theta.copy(), theta.copy()
            tp[:, d] += h
            tm[:, d] -= h
            deriv = (tf.forward(tp)[:, d] - tf.forward(tm)[:, d]) / (2 * h)
            fd_logdet += np.log(np.abs(deriv))
        analytic = tf.log_abs_det_forward(theta)
        assert np.max(np.abs(analytic - fd_logdet) / np.abs(fd_logdet + 1e-12)) < 1e-5


def test_density_change_of_variables_consistency():
    # p_u(u) = p_theta(inv(u)) - log|det J_fwd(inv(u))| must integrate to 1.
    prior = BoxUniformPrior([-1.0], [1.0])
    tf = build_transform(prior)
    us = np.linspace(-12, 12, 20001)[:, None]
    theta = tf.inverse(us)
    log_pu = prior.logpdf(theta) - tf.log_abs_det_forward(theta)
    integral = np.trapezoid(np.exp(log_pu), us[:, 0])
    assert integral == pytest.approx(1.0, abs=1e-3)
