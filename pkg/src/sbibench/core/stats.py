"""Column z-scoring and the median pairwise-distance heuristic."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ZScoreStats", "zscore_fit", "zscore_apply", "median_heuristic"]

# Columns flatter than this are treated as constant and left unscaled.
_CONST_SD = 1e-14

_MEDIAN_SUBSAMPLE = 1000
_MEDIAN_SUBSAMPLE_SEED = 74025


@dataclass(frozen=True)
class ZScoreStats:
    mean: np.ndarray
    sd: np.ndarray


def zscore_fit(samples: np.ndarray) -> ZScoreStats:
    """Per-column mean and population sd; near-constant columns get sd 1."""
    x = np.asarray(samples, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise ValueError("zscore_fit needs an N x D matrix with N >= 2")
    mean = x.mean(axis=0)
    sd = x.std(axis=0)
    sd = np.where(sd < _CONST_SD, 1.0, sd)
    return ZScoreStats(mean=mean, sd=sd)


def zscore_apply(stats: ZScoreStats, samples: np.ndarray) -> np.ndarray:
    x = np.asarray(samples, dtype=float)
    return (x - stats.mean) / stats.sd


def median_heuristic(samples: np.ndarray) -> float:
    """Median pairwise Euclidean distance, the usual kernel lengthscale.

    Subsamples to 1000 rows (fixed internal seed, so the result is a
    deterministic function of the input) before forming all pairs.
    """
    x = np.atleast_2d(np.asarray(samples, dtype=float))
    n = x.shape[0]
    if n < 2:
        raise ValueError("median_heuristic needs at least two rows")
    if n > _MEDIAN_SUBSAMPLE:
        rng = np.random.default_rng(_MEDIAN_SUBSAMPLE_SEED)
        x = x[rng.choice(n, size=_MEDIAN_SUBSAMPLE, replace=False)]
        n = _MEDIAN_SUBSAMPLE
    sq = np.sum(x**2, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
    iu = np.triu_indices(n, k=1)
    med = float(np.median(np.sqrt(np.maximum(d2[iu], 0.0))))
    if med <= 0.0:
        raise ValueError("all points identical: median distance is zero")
    return med
