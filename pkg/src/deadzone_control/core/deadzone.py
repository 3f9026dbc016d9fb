"""Non-symmetric dead-zone actuator model and its residual decomposition.

The actuator output is

    v = m (u - delta_l)   if u <= delta_l
    v = 0                 if delta_l < u < delta_r
    v = m (u - delta_r)   if u >= delta_r

which is rewritten as ``v = m (u - d(u))`` with the residual ``d(u)`` being
the clamp of ``u`` to ``[delta_l, delta_r]``.  All functions accept scalars or
numpy arrays.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ContractError, DomainError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class DeadZoneParams:
    """Slope and band edges of the dead-zone (equal slopes on both sides)."""

    m: float
    delta_l: float
    delta_r: float

    def __post_init__(self):
        for name in ("m", "delta_l", "delta_r"):
            if not math.isfinite(getattr(self, name)):
                raise ContractError(f"Dead-zone parameter {name} must be finite")
        if self.m <= 0:
            raise ContractError(f"Dead-zone slope must be positive, got m={self.m}")
        if not self.delta_l < 0 < self.delta_r:
            raise ContractError(
                "Dead-band edges must satisfy delta_l < 0 < delta_r, "
                f"got delta_l={self.delta_l}, delta_r={self.delta_r}"
            )


def _check_finite(u: ArrayLike) -> None:
    if not np.all(np.isfinite(u)):
        raise DomainError(f"Controller output must be finite, got {u!r}")


def apply(u: ArrayLike, p: DeadZoneParams) -> ArrayLike:
    """Actuator output for controller output ``u``."""
    _check_finite(u)
    if np.ndim(u) == 0:
        u = float(u)
        if u <= p.delta_l:
            return p.m * (u - p.delta_l)
        if u >= p.delta_r:
            return p.m * (u - p.delta_r)
        return 0.0

    u = np.asarray(u, dtype=float)
    return np.where(
        u <= p.delta_l,
        p.m * (u - p.delta_l),
        np.where(u >= p.delta_r, p.m * (u - p.delta_r), 0.0),
    )


def residual(u: ArrayLike, p: DeadZoneParams) -> ArrayLike:
    """Residual ``d(u)``, i.e. ``u`` clamped to the dead band."""
    _check_finite(u)
    if np.ndim(u) == 0:
        u = float(u)
        if u <= p.delta_l:
            return p.delta_l
        if u >= p.delta_r:
            return p.delta_r
        return u

    u = np.asarray(u, dtype=float)
    return np.where(u <= p.delta_l, p.delta_l, np.where(u >= p.delta_r, p.delta_r, u))


def residual_bound(p: DeadZoneParams) -> float:
    """Bound on ``|d(u)|`` over all ``u``."""
    return max(-p.delta_l, p.delta_r)
