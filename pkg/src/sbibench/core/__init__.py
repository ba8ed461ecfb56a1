"""Probability primitives shared across the benchmark engine."""

from .kde import KDE, kde_fit
from .priors import (
    BoxUniformPrior,
    DiagGaussianPrior,
    IndepLogNormalPrior,
    Prior,
    StructuredGaussianPrior,
)
from .rng import RngStream
from .stats import ZScoreStats, median_heuristic, zscore_apply, zscore_fit
from .transforms import Transform, build_transform

__all__ = [
    "KDE",
    "kde_fit",
    "Prior",
    "DiagGaussianPrior",
    "BoxUniformPrior",
    "IndepLogNormalPrior",
    "StructuredGaussianPrior",
    "RngStream",
    "ZScoreStats",
    "median_heuristic",
    "zscore_apply",
    "zscore_fit",
    "Transform",
    "build_transform",
]
