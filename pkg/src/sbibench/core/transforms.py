"""Per-dimension parameter transforms to unbounded space.

MCMC runs on unconstrained coordinates: box-supported dimensions map
through a logit-affine transform, positive dimensions through log, and
already-unbounded dimensions through the identity. Densities moved to
the unbounded side pick up the forward map's log-abs-det-Jacobian.
"""

from __future__ import annotations

import numpy as np

from .priors import (
    BoxUniformPrior,
    DiagGaussianPrior,
    IndepLogNormalPrior,
    Prior,
    StructuredGaussianPrior,
)

__all__ = ["Transform", "build_transform"]

IDENTITY = 0
LOG = 1
LOGIT_AFFINE = 2


def _sigmoid(u):
    out = np.empty_like(u)
    pos = u >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-u[pos]))
    eu = np.exp(u[~pos])
    out[~pos] = eu / (1.0 + eu)
    return out


class Transform:
    """Vector of per-dimension maps with a shared interface.

    forward:  theta (N x D or D) -> u, unbounded
    inverse:  u -> theta, support interior
    log_abs_det_forward: per-row log |det d forward / d theta|
    """

    def __init__(self, kinds, lower=None, upper=None):
        self.kinds = np.asarray(kinds, dtype=int)
        self.dim = self.kinds.size
        self.lower = np.zeros(self.dim) if lower is None else np.asarray(lower, float)
        self.upper = np.ones(self.dim) if upper is None else np.asarray(upper, float)

    @property
    def is_identity(self) -> bool:
        return bool(np.all(self.kinds == IDENTITY))

    def _apply(self, x, fn):
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        x = np.atleast_2d(x)
        if x.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} columns, got {x.shape[1]}")
        out = fn(x)
        return out[0] if single and out.ndim > 1 else out

    def forward(self, theta):
        def fn(t):
            u = t.copy()
            m = self.kinds == LOG
            if m.any():
                u[:, m] = np.log(t[:, m])
            m = self.kinds == LOGIT_AFFINE
            if m.any():
                z = (t[:, m] - self.lower[m]) / (self.upper[m] - self.lower[m])
                u[:, m] = np.log(z) - np.log1p(-z)
            return u

        return self._apply(theta, fn)

    def inverse(self, u):
        def fn(v):
            t = v.copy()
            m = self.kinds == LOG
            if m.any():
                t[:, m] = np.exp(v[:, m])
            m = self.kinds == LOGIT_AFFINE
            if m.any():
                z = _sigmoid(v[:, m])
                t[:, m] = self.lower[m] + (self.upper[m] - self.lower[m]) * z
            return t

        return self._apply(u, fn)

    def log_abs_det_forward(self, theta):
        """log |det J| of the forward map, evaluated at theta (per row)."""
        theta = np.asarray(theta, dtype=float)
        single = theta.ndim == 1
        t = np.atleast_2d(theta)
        total = np.zeros(t.shape[0])
        m = self.kinds == LOG
        if m.any():
            total += -np.log(t[:, m]).sum(axis=1)
        m = self.kinds == LOGIT_AFFINE
        if m.any():
            width = self.upper[m] - self.lower[m]
            z = (t[:, m] - self.lower[m]) / width
            total += (-np.log(width) - np.log(z) - np.log1p(-z)).sum(axis=1)
        return float(total[0]) if single else total


def build_transform(prior: Prior) -> Transform:
    """Unbounding transform matched to a prior's support."""
    if isinstance(prior, BoxUniformPrior):
        return Transform(
            np.full(prior.dim, LOGIT_AFFINE), lower=prior.lower, upper=prior.upper
        )
    if isinstance(prior, IndepLogNormalPrior):
        return Transform(np.full(prior.dim, LOG))
    if isinstance(prior, (DiagGaussianPrior, StructuredGaussianPrior)):
        return Transform(np.full(prior.dim, IDENTITY))
    raise TypeError(f"no transform rule for prior type {type(prior).__name__}")
