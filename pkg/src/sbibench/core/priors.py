"""Prior distributions over task parameters.

Four families cover every benchmark task: diagonal Gaussians, box
uniforms, independent log-normals, and a structured Gaussian whose
precision is built from a difference-penalty factor (used by the
Bernoulli GLM tasks). All priors sample N x D matrices and evaluate
exact log-densities row-wise.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import solve_triangular

__all__ = [
    "Prior",
    "DiagGaussianPrior",
    "BoxUniformPrior",
    "IndepLogNormalPrior",
    "StructuredGaussianPrior",
]

_LOG_2PI = np.log(2.0 * np.pi)


class PriorConfigError(ValueError):
    """Raised when a prior is constructed with invalid parameters."""


class Prior:
    """Base class: ``sample(n, rng)`` and vectorized ``logpdf``."""

    dim: int

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def logpdf(self, theta: np.ndarray) -> np.ndarray | float:
        """Exact log-density; -inf outside the support.

        Accepts a single D-vector (returns a float) or an N x D matrix
        (returns a length-N vector).
        """
        theta = np.asarray(theta, dtype=float)
        single = theta.ndim == 1
        theta = np.atleast_2d(theta)
        if theta.shape[1] != self.dim:
            raise ValueError(
                f"theta has {theta.shape[1]} columns, prior dim is {self.dim}"
            )
        out = self._logpdf(theta)
        return float(out[0]) if single else out

    def _logpdf(self, theta: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class DiagGaussianPrior(Prior):
    def __init__(self, mean, variance):
        self.mean = np.atleast_1d(np.asarray(mean, dtype=float))
        self.variance = np.atleast_1d(np.asarray(variance, dtype=float))
        if self.mean.shape != self.variance.shape:
            raise PriorConfigError("mean and variance shapes differ")
        if np.any(self.variance <= 0):
            raise PriorConfigError("variance entries must be strictly positive")
        self.dim = self.mean.size
        self._sd = np.sqrt(self.variance)

    def sample(self, n, rng):
        if n < 1:
            raise ValueError("n must be >= 1")
        return self.mean + self._sd * rng.standard_normal((n, self.dim))

    def _logpdf(self, theta):
        z2 = ((theta - self.mean) ** 2) / self.variance
        return -0.5 * (z2.sum(axis=1) + np.log(self.variance).sum() + self.dim * _LOG_2PI)


class BoxUniformPrior(Prior):
    def __init__(self, lower, upper):
        self.lower = np.atleast_1d(np.asarray(lower, dtype=float))
        self.upper = np.atleast_1d(np.asarray(upper, dtype=float))
        if self.lower.shape != self.upper.shape:
            raise PriorConfigError("lower and upper shapes differ")
        if np.any(self.lower >= self.upper):
            raise PriorConfigError("need lower < upper elementwise")
        self.dim = self.lower.size
        self._log_volume = float(np.log(self.upper - self.lower).sum())

    def sample(self, n, rng):
        if n < 1:
            raise ValueError("n must be >= 1")
        return rng.uniform(self.lower, self.upper, size=(n, self.dim))

    def _logpdf(self, theta):
        inside = np.all((theta >= self.lower) & (theta <= self.upper), axis=1)
        return np.where(inside, -self._log_volume, -np.inf)


class IndepLogNormalPrior(Prior):
    """Independent log-normal coordinates: log(theta_d) ~ N(log_mean_d, log_sd_d^2)."""

    def __init__(self, log_mean, log_sd):
        self.log_mean = np.atleast_1d(np.asarray(log_mean, dtype=float))
        self.log_sd = np.atleast_1d(np.asarray(log_sd, dtype=float))
        if self.log_mean.shape != self.log_sd.shape:
            raise PriorConfigError("log_mean and log_sd shapes differ")
        if np.any(self.log_sd <= 0):
            raise PriorConfigError("log_sd entries must be strictly positive")
        self.dim = self.log_mean.size

    def sample(self, n, rng):
        if n < 1:
            raise ValueError("n must be >= 1")
        return np.exp(self.log_mean + self.log_sd * rng.standard_normal((n, self.dim)))

    def _logpdf(self, theta):
        out = np.full(theta.shape[0], -np.inf)
        pos = np.all(theta > 0, axis=1)
        if np.any(pos):
            t = theta[pos]
            logt = np.log(t)
            z2 = ((logt - self.log_mean) / self.log_sd) ** 2
            out[pos] = (
                -logt.sum(axis=1)
                - np.log(self.log_sd).sum()
                - 0.5 * self.dim * _LOG_2PI
                - 0.5 * z2.sum(axis=1)
            )
        return out


class StructuredGaussianPrior(Prior):
    """Offset coordinate plus a smooth vector with precision F^T F.

    theta = (offset, f) with offset ~ N(0, offset_variance) and
    f ~ N(0, (F^T F)^{-1}). F penalizes second-order differences in the
    Bernoulli GLM tasks; any invertible factor is accepted.
    """

    def __init__(self, precision_factor, offset_variance):
        self.F = np.asarray(precision_factor, dtype=float)
        if self.F.ndim != 2 or self.F.shape[0] != self.F.shape[1]:
            raise PriorConfigError("precision factor must be square")
        self.offset_variance = float(offset_variance)
        if self.offset_variance <= 0:
            raise PriorConfigError("offset variance must be strictly positive")
        self._prec = self.F.T @ self.F
        sign, logdet = np.linalg.slogdet(self._prec)
        if sign <= 0 or not np.isfinite(logdet):
            raise PriorConfigError("F^T F must be invertible")
        self._logdet_prec = logdet
        # f = L^{-T} z has covariance (L L^T)^{-1} = (F^T F)^{-1}
        self._chol_prec = np.linalg.cholesky(self._prec)
        self.dim = self.F.shape[0] + 1

    def sample(self, n, rng):
        if n < 1:
            raise ValueError("n must be >= 1")
        offset = np.sqrt(self.offset_variance) * rng.standard_normal((n, 1))
        z = rng.standard_normal((n, self.dim - 1))
        f = solve_triangular(self._chol_prec.T, z.T, lower=False).T
        return np.hstack([offset, f])

    def _logpdf(self, theta):
        offset = theta[:, 0]
        f = theta[:, 1:]
        lp_offset = -0.5 * (
            offset**2 / self.offset_variance
            + np.log(self.offset_variance)
            + _LOG_2PI
        )
        quad = np.einsum("ni,ij,nj->n", f, self._prec, f)
        lp_f = 0.5 * (self._logdet_prec - (self.dim - 1) * _LOG_2PI) - 0.5 * quad
        return lp_offset + lp_f
