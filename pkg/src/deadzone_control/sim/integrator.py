"""Classical fixed-step fourth order Runge-Kutta."""

from typing import Callable

import numpy as np

from deadzone_control.core.errors import ContractError, DivergenceError

Rhs = Callable[[np.ndarray, float, float], np.ndarray]


def rk4_step(rhs: Rhs, state: np.ndarray, upsilon: float, t: float, h: float) -> np.ndarray:
    """
    Advance ``state`` by one step of size ``h``.

    Args:
        rhs: Derivative function rhs(state, upsilon, t)
        state: Current state vector
        upsilon: Actuator output, held constant over the step (zero-order hold)
        t: Time at the start of the step
        h: Step size in seconds

    Returns:
        State at t + h
    """
    if h <= 0:
        raise ContractError(f"Step size must be positive, got {h}")

    k1 = rhs(state, upsilon, t)
    k2 = rhs(state + 0.5 * h * k1, upsilon, t + 0.5 * h)
    k3 = rhs(state + 0.5 * h * k2, upsilon, t + 0.5 * h)
    k4 = rhs(state + h * k3, upsilon, t + h)

    increment = k1 + 2.0 * k2 + 2.0 * k3 + k4
    # A non-finite stage always propagates into the weighted sum.
    if not np.isfinite(increment).all():
        raise DivergenceError(t, f"Non-finite Runge-Kutta stage at t={t:.6f} s")

    return state + (h / 6.0) * increment


def integrate(rhs: Rhs, state: np.ndarray, upsilon: float, t0: float, h: float, steps: int) -> np.ndarray:
    """Apply :func:`rk4_step` ``steps`` times with a constant input."""
    x = np.asarray(state, dtype=float)
    for k in range(steps):
        x = rk4_step(rhs, x, upsilon, t0 + k * h, h)
    return x
