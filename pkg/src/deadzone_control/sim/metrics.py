"""Windowed error metrics over a closed-loop log."""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from deadzone_control.sim.runner import SimRecord


@dataclass(frozen=True)
class Trajectory:
    """Column view of a record list."""

    t: np.ndarray
    state: np.ndarray
    x_tilde: np.ndarray
    epsilon: np.ndarray
    u_hat: np.ndarray
    u: np.ndarray
    upsilon: np.ndarray
    d_true: np.ndarray
    d_hat: np.ndarray
    rule_outputs: np.ndarray

    @classmethod
    def from_records(cls, records: Sequence[SimRecord]) -> "Trajectory":
        if not records:
            empty = np.empty(0)
            return cls(empty, np.empty((0, 0)), np.empty((0, 0)), empty, empty,
                       empty, empty, empty, empty, np.empty((0, 0)))
        return cls(
            t=np.array([r.t for r in records]),
            state=np.array([r.state for r in records]),
            x_tilde=np.array([r.x_tilde for r in records]),
            epsilon=np.array([r.epsilon for r in records]),
            u_hat=np.array([r.u_hat for r in records]),
            u=np.array([r.u for r in records]),
            upsilon=np.array([r.upsilon for r in records]),
            d_true=np.array([r.d_true for r in records]),
            d_hat=np.array([r.d_hat for r in records]),
            rule_outputs=np.array([r.rule_outputs for r in records]),
        )

    def __len__(self) -> int:
        return len(self.t)

    @property
    def tracking_error(self) -> np.ndarray:
        """Position error ``x - x_d``."""
        if len(self) == 0:
            return np.empty(0)
        return self.x_tilde[:, 0]

    def window(self, start: float, end: float) -> np.ndarray:
        """Mask of samples with ``start <= t < end``."""
        return (self.t >= start) & (self.t < end)


def _masked_max(values: np.ndarray, mask: np.ndarray) -> float:
    selected = np.abs(values[mask])
    return float(selected.max()) if selected.size else math.nan


def _masked_rms(values: np.ndarray, mask: np.ndarray) -> float:
    selected = values[mask]
    return float(np.sqrt(np.mean(selected**2))) if selected.size else math.nan


def max_abs_error(traj: Trajectory, start: float, end: float) -> float:
    return _masked_max(traj.tracking_error, traj.window(start, end))


def rms_error(traj: Trajectory, start: float, end: float) -> float:
    return _masked_rms(traj.tracking_error, traj.window(start, end))


def epsilon_convergence(traj: Trajectory, t_end: float) -> Tuple[bool, float]:
    """Max ``|eps|`` over the last quarter against the first quarter.

    Returns:
        (passed, ratio) where passed means ratio < 0.1
    """
    quarter = t_end / 4.0
    early = _masked_max(traj.epsilon, traj.window(0.0, quarter))
    late = _masked_max(traj.epsilon, traj.window(t_end - quarter, t_end))
    if math.isnan(early) or math.isnan(late):
        return False, math.nan
    if early == 0.0:
        return late == 0.0, 0.0 if late == 0.0 else math.inf
    ratio = late / early
    return ratio < 0.1, ratio


@dataclass(frozen=True)
class RunMetrics:
    """Summary reported in the manifest and the sweep table."""

    window: float
    rms_first: float
    rms_last: float
    max_first: float
    max_last: float
    max_abs_epsilon: float
    max_abs_u: float
    epsilon_converged: bool
    epsilon_ratio: float

    @property
    def tracking_ratio(self) -> float:
        if math.isnan(self.max_first) or self.max_first == 0.0:
            return math.nan
        return self.max_last / self.max_first


def compute_metrics(records: Sequence[SimRecord], t_end: float, window: float) -> RunMetrics:
    traj = Trajectory.from_records(records)
    everything = np.ones(len(traj), dtype=bool)
    converged, ratio = epsilon_convergence(traj, t_end)
    return RunMetrics(
        window=window,
        rms_first=rms_error(traj, 0.0, window),
        rms_last=rms_error(traj, t_end - window, t_end),
        max_first=max_abs_error(traj, 0.0, window),
        max_last=max_abs_error(traj, t_end - window, t_end),
        max_abs_epsilon=_masked_max(traj.epsilon, everything),
        max_abs_u=_masked_max(traj.u, everything),
        epsilon_converged=converged,
        epsilon_ratio=ratio,
    )
