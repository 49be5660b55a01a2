"""Streaming update laws: data-selective Volterra NLMS and the VNLMS baseline."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import NumericInputError
from .volterra import ArrayF, VolterraConfig, expand, total_dimension

DEFAULT_WINDOW = 20
DEFAULT_STEADY_THRESHOLD = 5


@dataclass(frozen=True)
class ThresholdPolicy:
    """Update threshold: a fixed gamma, or ``sqrt(tau(k) * sigma_n_sq)`` where
    tau(k) switches between a transient and a steady-state value.

    The transient detector counts update flags over the last
    ``window_length`` iterations: at least ``steady_update_threshold`` updates
    (or a window that has not filled yet) means transient; fewer means steady
    state.  The rule is symmetric, so a burst of updates flips the detector
    straight back to transient.
    """

    mode: Literal["fixed", "time_varying"]
    gamma_fixed: float = 0.0
    sigma_n_sq: float = 0.01
    tau_transient: float = 5.0
    tau_steady: float = 9.0
    window_length: int = DEFAULT_WINDOW
    steady_update_threshold: int = DEFAULT_STEADY_THRESHOLD

    def __post_init__(self) -> None:
        if self.mode not in ("fixed", "time_varying"):
            raise ValueError(f"unknown threshold mode {self.mode!r}")
        if not (math.isfinite(self.gamma_fixed) and self.gamma_fixed >= 0):
            raise ValueError(f"gamma_fixed must be >= 0, got {self.gamma_fixed!r}")
        if not (math.isfinite(self.sigma_n_sq) and self.sigma_n_sq > 0):
            raise ValueError(f"sigma_n_sq must be positive, got {self.sigma_n_sq!r}")
        if not 1.0 <= self.tau_transient <= 5.0:
            raise ValueError(f"tau_transient must lie in [1, 5], got {self.tau_transient!r}")
        if not 5.0 <= self.tau_steady <= 9.0:
            raise ValueError(f"tau_steady must lie in [5, 9], got {self.tau_steady!r}")
        if self.window_length < 1:
            raise ValueError(f"window_length must be >= 1, got {self.window_length!r}")
        if not 1 <= self.steady_update_threshold <= self.window_length:
            raise ValueError(
                "steady_update_threshold must lie in [1, window_length],"
                f" got {self.steady_update_threshold!r}"
            )

    @classmethod
    def fixed(cls, gamma: float, **kwargs) -> "ThresholdPolicy":
        return cls(mode="fixed", gamma_fixed=gamma, **kwargs)

    @classmethod
    def time_varying(cls, sigma_n_sq: float, **kwargs) -> "ThresholdPolicy":
        return cls(mode="time_varying", sigma_n_sq=sigma_n_sq, **kwargs)


@dataclass(frozen=True, slots=True)
class StepOutcome:
    """Telemetry of one filter step, including the regressor the step saw."""

    k: int
    e: float
    updated: bool
    mu_bar: float
    alpha: float
    gamma_used: float
    y_hat: float
    in_transient: bool
    regressor: ArrayF


class FilterState:
    """Single-owner streaming state: current estimate, delay line, iteration
    counter and the recent update flags driving the transient detector.

    Steps replace ``w`` with a fresh array instead of mutating it, so a
    reference taken before a step stays valid as the previous estimate.
    """

    def __init__(self, config: VolterraConfig, window_length: int = DEFAULT_WINDOW):
        self.config = config
        self.w: ArrayF = np.zeros(total_dimension(config))
        self.delay_line: ArrayF = np.zeros(config.taps)
        self.k = 0
        self.update_flags: deque[bool] = deque(maxlen=window_length)


def push_sample(state: FilterState, x_new: float) -> FilterState:
    """Shift the delay line one step; the newest sample lands at lag 0."""
    value = float(x_new)
    if not math.isfinite(value):
        raise NumericInputError(f"sample must be finite, got {x_new!r}")
    dl = state.delay_line
    dl[1:] = dl[:-1]
    dl[0] = value
    return state


def _in_transient(history: Sequence[bool], window_length: int, threshold: int) -> bool:
    flags = list(history)[-window_length:]
    if len(flags) < window_length:
        return True
    return sum(flags) >= threshold


def current_gamma(policy: ThresholdPolicy, update_history: Sequence[bool]) -> float:
    """Threshold in force given the recent update flags."""
    if policy.mode == "fixed":
        return policy.gamma_fixed
    transient = _in_transient(
        update_history, policy.window_length, policy.steady_update_threshold
    )
    tau = policy.tau_transient if transient else policy.tau_steady
    return math.sqrt(tau * policy.sigma_n_sq)


def _checked_inputs(state: FilterState, d: float) -> tuple[float, ArrayF]:
    desired = float(d)
    if not math.isfinite(desired):
        raise NumericInputError(f"desired value must be finite, got {d!r}")
    x = expand(state.delay_line, state.config)
    if not np.isfinite(x).all():
        raise NumericInputError("regressor contains non-finite entries")
    return desired, x


def ds_vnlms_step(state: FilterState, d: float, policy: ThresholdPolicy) -> StepOutcome:
    """One data-selective step against the sample already in the delay line.

    The kernels move only when |e(k)| strictly exceeds the threshold in
    force, with step weight 1 - gamma/|e(k)| and energy normalization
    x'x + delta; at or below the threshold the estimate is left untouched.
    The delay line is not advanced here (see :func:`push_sample`).
    """
    desired, x = _checked_inputs(state, d)
    transient = _in_transient(
        state.update_flags, policy.window_length, policy.steady_update_threshold
    )
    gamma = current_gamma(policy, state.update_flags)
    y_hat = float(state.w @ x)
    e = desired - y_hat
    alpha = float(x @ x) + state.config.regularization
    updated = abs(e) > gamma
    if updated:
        if alpha == 0.0:
            raise NumericInputError(
                "zero regressor energy with zero regularization; cannot normalize"
            )
        mu_bar = 1.0 - gamma / abs(e)
        state.w = state.w + (mu_bar / alpha) * e * x
    else:
        mu_bar = 0.0
    outcome = StepOutcome(
        k=state.k,
        e=e,
        updated=updated,
        mu_bar=mu_bar,
        alpha=alpha,
        gamma_used=gamma,
        y_hat=y_hat,
        in_transient=transient,
        regressor=x,
    )
    state.k += 1
    state.update_flags.append(updated)
    return outcome


def vnlms_step(state: FilterState, d: float, mu: float) -> StepOutcome:
    """One conventional normalized step: always update, constant step size.

    Shares the normalization alpha = x'x + delta with the data-selective
    update so the two algorithms are comparable under one regularization.
    """
    if not 0.0 < mu < 2.0:
        raise ValueError(f"step size must lie in (0, 2), got {mu!r}")
    desired, x = _checked_inputs(state, d)
    transient = _in_transient(state.update_flags, DEFAULT_WINDOW, DEFAULT_STEADY_THRESHOLD)
    y_hat = float(state.w @ x)
    e = desired - y_hat
    alpha = float(x @ x) + state.config.regularization
    if e != 0.0:
        if alpha == 0.0:
            raise NumericInputError(
                "zero regressor energy with zero regularization; cannot normalize"
            )
        state.w = state.w + (mu / alpha) * e * x
    outcome = StepOutcome(
        k=state.k,
        e=e,
        updated=True,
        mu_bar=mu,
        alpha=alpha,
        gamma_used=0.0,
        y_hat=y_hat,
        in_transient=transient,
        regressor=x,
    )
    state.k += 1
    state.update_flags.append(True)
    return outcome


def gamma_for_known_bound(noise_bound: float) -> float:
    """Smallest threshold for which noise bounded by C guarantees that the
    deviation-energy sequence never increases."""
    c = float(noise_bound)
    if not (math.isfinite(c) and c > 0):
        raise ValueError(f"noise bound must be positive, got {noise_bound!r}")
    return 2.0 * c
