"""Independent reference for the adaptive estimator.

The oracle knows the true dead-zone. It fits the rule outputs that best
reproduce the residual on a dense grid, and from that fit derives the
Lyapunov surrogate and the admissible growth of it over a time window.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from deadzone_control.core.controller import ControllerGains
from deadzone_control.core.deadzone import DeadZoneParams, residual
from deadzone_control.core.errors import ContractError
from deadzone_control.core.fuzzy import FuzzyPartition, basis_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleFit:
    rule_outputs: np.ndarray
    grid: np.ndarray
    fitted: np.ndarray
    max_fit_error: float
    e_max: float


def fit_rule_outputs(
    partition: FuzzyPartition,
    deadzone: DeadZoneParams,
    lo: float = -2.0,
    hi: float = 2.0,
    points: int = 4001,
) -> OracleFit:
    """
    Least-squares rule outputs for the residual over ``[lo, hi]``.

    Args:
        partition: Partition providing the basis
        deadzone: True dead-zone, unknown to the controller
        lo, hi: Fit interval in u_hat units
        points: Number of grid points

    Returns:
        OracleFit with the fitted outputs and the fit errors
    """
    grid = np.linspace(lo, hi, points)
    design = basis_matrix(grid, partition)
    target = residual(grid, deadzone)
    solution, *_ = np.linalg.lstsq(design, target, rcond=None)

    fitted = design @ solution
    max_fit_error = float(np.max(np.abs(fitted - target)))
    # d(u) lies in [delta_l, delta_r], so this bounds |d_hat* - d(u)| for any u.
    e_max = float(np.max(np.maximum(fitted - deadzone.delta_l, deadzone.delta_r - fitted)))

    logger.debug(f"Oracle fit on {points} points: max error {max_fit_error:.4g}, e_max {e_max:.4g}")
    return OracleFit(solution, grid, fitted, max_fit_error, e_max)


def increase_budget(fit: OracleFit, gains: ControllerGains, window: float = 1.0) -> float:
    """Largest growth of the surrogate the approximation error allows over ``window`` seconds.

    Bounds ``bm * eps * (d_hat* - d) - kappa * eps^2`` from above by
    ``(bm * e_max)^2 / (4 kappa)`` and integrates over the window.
    """
    return (gains.bm * fit.e_max) ** 2 * window / (4.0 * gains.kappa)


def lyapunov_series(
    epsilon: np.ndarray,
    rule_outputs: np.ndarray,
    target: np.ndarray,
    gains: ControllerGains,
) -> np.ndarray:
    """``V_k = eps_k^2 / 2 + bm / (2 phi) * ||D_k - D*||^2`` for every sample."""
    if gains.phi <= 0:
        raise ContractError("The surrogate is undefined for phi = 0")
    epsilon = np.asarray(epsilon, dtype=float)
    rule_outputs = np.asarray(rule_outputs, dtype=float)
    if rule_outputs.shape != (len(epsilon), len(target)):
        raise ContractError(
            f"Rule output history of shape {rule_outputs.shape} does not match "
            f"{len(epsilon)} samples of {len(target)} rules"
        )
    mismatch = rule_outputs - np.asarray(target, dtype=float)
    return 0.5 * epsilon**2 + gains.bm / (2.0 * gains.phi) * np.sum(mismatch**2, axis=1)


def max_window_increase(values: np.ndarray, samples_per_window: int) -> Tuple[float, int]:
    """Largest ``values[k + w] - values[k]``; returns (increase, k).

    Returns ``(-inf, -1)`` when the series is shorter than one window.
    """
    values = np.asarray(values, dtype=float)
    if samples_per_window <= 0:
        raise ContractError(f"Window must span at least one sample, got {samples_per_window}")
    if len(values) <= samples_per_window:
        return -math.inf, -1
    growth = values[samples_per_window:] - values[:-samples_per_window]
    k = int(np.argmax(growth))
    return float(growth[k]), k


@dataclass(frozen=True)
class PowerBalance:
    dissipated: float
    drop: float

    @property
    def mismatch(self) -> float:
        return self.dissipated - self.drop


def power_balance(epsilon: np.ndarray, values: np.ndarray, kappa: float, dt: float) -> PowerBalance:
    """``kappa * integral(eps^2)`` next to ``V(0) - V(T)``; reported, not asserted."""
    epsilon = np.asarray(epsilon, dtype=float)
    if len(values) == 0:
        return PowerBalance(0.0, 0.0)
    return PowerBalance(
        dissipated=float(kappa * np.sum(epsilon**2) * dt),
        drop=float(values[0] - values[-1]),
    )
