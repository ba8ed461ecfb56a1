"""Adaptive Dormand-Prince 4(5) integration, vectorized over a batch.

Each batch row carries its own parameters, time, and step size; rows
advance in lockstep but every row's arithmetic depends only on its own
state, so results are bit-identical no matter how rows are batched.
Rows that leave the finite regime, underflow the step size, or exceed
the step cap are flagged invalid (NaN outputs) rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = ["OdeProblem", "OdeSolution", "ode_solve"]

# Dormand-Prince coefficients
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
# 5th-order solution weights equal the last tableau row (FSAL); the
# embedded 4th-order difference gives the error estimate.
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_MAX_STEPS = 100_000


@dataclass
class OdeProblem:
    """Batched initial-value problem with shared dynamics and time grid."""

    rhs: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
    y0: np.ndarray            # B x S initial states
    params: np.ndarray        # B x P per-row parameters
    t_span: tuple[float, float]
    output_times: np.ndarray  # strictly increasing, inside the span

    def __post_init__(self):
        self.y0 = np.atleast_2d(np.asarray(self.y0, dtype=float))
        self.params = np.atleast_2d(np.asarray(self.params, dtype=float))
        self.output_times = np.asarray(self.output_times, dtype=float)
        if np.any(np.diff(self.output_times) <= 0):
            raise ValueError("output times must be strictly increasing")
        t0, t1 = self.t_span
        if self.output_times[0] < t0 or self.output_times[-1] > t1:
            raise ValueError("output times must lie within the time span")
        if not np.all(np.isfinite(self.y0)):
            raise ValueError("initial state must be finite")


@dataclass
class OdeSolution:
    states: np.ndarray  # B x T x S, NaN rows where invalid
    valid: np.ndarray   # B boolean
    steps: np.ndarray = field(default=None)  # accepted steps per row


def ode_solve(problem: OdeProblem, rtol: float = 1e-6, atol: float = 1e-8) -> OdeSolution:
    y = problem.y0.copy()
    n_rows, n_state = y.shape
    t0, t_end = float(problem.t_span[0]), float(problem.t_span[1])
    t_out = problem.output_times
    n_out = t_out.size
    span = t_end - t0
    h_min = 1e-12 * max(span, 1.0)

    t = np.full(n_rows, t0)
    h = np.full(n_rows, span / 100.0)
    out_idx = np.zeros(n_rows, dtype=int)
    invalid = np.zeros(n_rows, dtype=bool)
    steps = np.zeros(n_rows, dtype=int)
    states = np.full((n_rows, n_out, n_state), np.nan)

    def rhs(tv, yv, pv):
        return np.asarray(problem.rhs(tv, yv, pv), dtype=float)

    iter_cap = _MAX_STEPS * 4
    for _ in range(iter_cap):
        active = (~invalid) & (out_idx < n_out)
        if not active.any():
            break
        ia = np.where(active)[0]
        ya = y[ia]
        ta = t[ia]
        pa = problem.params[ia]
        target = t_out[out_idx[ia]]
        h_eff = np.minimum(h[ia], target - ta)
        h_eff = np.maximum(h_eff, 0.0)

        k = np.empty((7, ia.size, n_state))
        k[0] = rhs(ta, ya, pa)
        for s in range(1, 7):
            incr = np.tensordot(_A[s], k[:s], axes=(0, 0))
            k[s] = rhs(ta + _C[s] * h_eff, ya + h_eff[:, None] * incr, pa)
        y_new = ya + h_eff[:, None] * np.tensordot(_A[6], k[:6], axes=(0, 0))
        err = h_eff[:, None] * np.tensordot(_E, k, axes=(0, 0))

        scale = atol + rtol * np.maximum(np.abs(ya), np.abs(y_new))
        with np.errstate(invalid="ignore", divide="ignore"):
            err_norm = np.sqrt(np.mean((err / scale) ** 2, axis=1))

        finite = np.all(np.isfinite(y_new), axis=1) & np.isfinite(err_norm)
        accept = finite & (err_norm <= 1.0)

        with np.errstate(divide="ignore"):
            factor = _SAFETY * err_norm ** (-0.2)
        factor = np.clip(np.where(np.isfinite(factor), factor, _MIN_FACTOR),
                         _MIN_FACTOR, _MAX_FACTOR)

        # accepted rows advance; exact landings record the pending output
        adv = ia[accept]
        t[adv] = ta[accept] + h_eff[accept]
        y[adv] = y_new[accept]
        steps[adv] += 1
        landed = accept & (ta + h_eff >= target)
        for row, snapshot in zip(ia[landed], y_new[landed]):
            states[row, out_idx[row]] = snapshot
            out_idx[row] += 1

        h[ia] = np.maximum(h_eff, h_min) * factor

        dead = (~finite) | (h[ia] < h_min) | (steps[ia] >= _MAX_STEPS)
        bad = ia[dead & ~ (accept & (out_idx[ia] >= n_out))]
        invalid[bad] = True
    else:
        invalid[(out_idx < n_out)] = True

    invalid |= out_idx < n_out
    states[invalid] = np.nan
    return OdeSolution(states=states, valid=~invalid, steps=steps)
