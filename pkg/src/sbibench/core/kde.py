"""Gaussian kernel density estimation with Scott's-rule bandwidth.

The bandwidth matrix is the Cholesky factor of the (weighted) sample
covariance scaled by Scott's factor N^(-1/(D+4)), giving a full-
covariance Gaussian kernel. Weighted and unweighted fits share one code
path, so equal weights reproduce the unweighted fit exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular
from scipy.special import logsumexp

__all__ = ["KDE", "kde_fit"]

_LOG_2PI = np.log(2.0 * np.pi)


@dataclass
class KDE:
    centers: np.ndarray          # M x D
    weights: np.ndarray          # M, sums to 1
    bandwidth_chol: np.ndarray   # D x D lower Cholesky factor of the kernel covariance
    log_weights: np.ndarray = field(init=False)
    _log_norm: float = field(init=False)

    def __post_init__(self):
        d = self.centers.shape[1]
        with np.errstate(divide="ignore"):
            self.log_weights = np.log(self.weights)
        self._log_norm = -0.5 * d * _LOG_2PI - np.log(
            np.diag(self.bandwidth_chol)
        ).sum()

    @property
    def dim(self) -> int:
        return self.centers.shape[1]

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if n < 1:
            raise ValueError("n must be >= 1")
        idx = rng.choice(self.centers.shape[0], size=n, p=self.weights)
        z = rng.standard_normal((n, self.dim))
        return self.centers[idx] + z @ self.bandwidth_chol.T

    def logpdf(self, theta: np.ndarray) -> np.ndarray | float:
        theta = np.asarray(theta, dtype=float)
        single = theta.ndim == 1
        t = np.atleast_2d(theta)
        if t.shape[1] != self.dim:
            raise ValueError(f"expected {self.dim} columns, got {t.shape[1]}")
        # Solve L y = (theta - c) per (point, center) pair; quad form is ||y||^2.
        out = np.empty(t.shape[0])
        chunk = max(1, int(2e6) // max(1, self.centers.shape[0]))
        for start in range(0, t.shape[0], chunk):
            block = t[start : start + chunk]                      # B x D
            diff = block[:, None, :] - self.centers[None, :, :]   # B x M x D
            flat = diff.reshape(-1, self.dim).T                   # D x (B*M)
            sol = solve_triangular(self.bandwidth_chol, flat, lower=True)
            q = (sol**2).sum(axis=0).reshape(block.shape[0], -1)  # B x M
            out[start : start + chunk] = logsumexp(
                self.log_weights + self._log_norm - 0.5 * q, axis=1
            )
        return float(out[0]) if single else out


def kde_fit(samples: np.ndarray, weights: np.ndarray | None = None) -> KDE:
    """Fit a Gaussian KDE; singular covariances fall back to a jittered diagonal."""
    x = np.atleast_2d(np.asarray(samples, dtype=float))
    n, d = x.shape
    if n < 2:
        raise ValueError("kde_fit needs at least two rows")
    if not np.all(np.isfinite(x)):
        raise ValueError("kde_fit requires finite samples")
    if weights is None:
        w = np.full(n, 1.0 / n)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (n,):
            raise ValueError("weights must have one entry per row")
        if np.any(w < 0) or w.sum() <= 0:
            raise ValueError("weights must be nonnegative with positive sum")
        # equal weights must reproduce the unweighted fit bit-for-bit
        w = np.full(n, 1.0 / n) if np.all(w == w[0]) else w / w.sum()

    mean = w @ x
    diff = x - mean
    cov = (diff * w[:, None]).T @ diff
    factor = n ** (-1.0 / (d + 4))

    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        warnings.warn(
            "singular sample covariance in kde_fit; "
            "falling back to jittered diagonal bandwidth",
            RuntimeWarning,
        )
        var = np.clip(np.diag(cov), 0.0, None) + 1e-6
        chol = np.diag(np.sqrt(var))
    return KDE(centers=x, weights=w, bandwidth_chol=factor * chol)
