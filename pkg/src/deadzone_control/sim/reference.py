"""Analytic reference trajectories."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from deadzone_control.core.errors import ContractError


@dataclass(frozen=True)
class ReferenceSample:
    x_d: np.ndarray
    x_d_n: float


@dataclass(frozen=True)
class SineReference:
    """``x_d = A sin(w t)`` with all derivatives evaluated in closed form."""

    order: int
    amplitude: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.order < 1:
            raise ContractError(f"Reference order must be >= 1, got {self.order}")
        if not (math.isfinite(self.amplitude) and math.isfinite(self.omega)):
            raise ContractError("Reference amplitude and frequency must be finite")

    def derivative(self, k: int, t: float) -> float:
        """k-th time derivative; sin shifted by k quarter periods."""
        phase = self.omega * t
        scale = self.amplitude * self.omega**k
        quarter = k % 4
        value = math.sin(phase) if quarter % 2 == 0 else math.cos(phase)
        return scale * (value if quarter < 2 else -value)

    def __call__(self, t: float) -> ReferenceSample:
        x_d = np.array([self.derivative(k, t) for k in range(self.order)])
        return ReferenceSample(x_d=x_d, x_d_n=self.derivative(self.order, t))

    def bounds(self) -> Tuple[float, ...]:
        """Bounds on ``|x_d^(k)|`` for k = 0..n."""
        return tuple(abs(self.amplitude) * abs(self.omega) ** k for k in range(self.order + 1))
