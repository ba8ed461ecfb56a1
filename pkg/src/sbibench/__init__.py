"""sbibench: a benchmark engine for simulation-based inference."""

__version__ = "0.1.0"
