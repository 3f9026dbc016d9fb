"""Harmonic oscillator ``x'' = -omega^2 x + b v``."""

import math

import numpy as np

from deadzone_control.core.deadzone import DeadZoneParams
from deadzone_control.core.errors import ContractError
from deadzone_control.core.plant_base import Plant


class HarmonicPlant(Plant):
    """Undamped oscillator; its closed form makes it the integrator test system."""

    def __init__(self, deadzone: DeadZoneParams, omega: float = 1.0, b: float = 1.0):
        super().__init__("harmonic", deadzone)
        if not (math.isfinite(omega) and omega > 0):
            raise ContractError(f"omega must be positive, got {omega}")
        self.omega = omega
        self.b = b

    @property
    def order(self) -> int:
        return 2

    def drift(self, x: np.ndarray, t: float) -> float:
        return -self.omega * self.omega * x[0]

    def input_gain(self, x: np.ndarray, t: float) -> float:
        return self.b

    def rhs(self, x: np.ndarray, upsilon: float, t: float) -> np.ndarray:
        return np.array([x[1], -self.omega * self.omega * x[0] + self.b * upsilon])

    def exact(self, x0: np.ndarray, t: float) -> np.ndarray:
        """Unforced solution from ``x0`` at time ``t``."""
        w = self.omega
        c, s = math.cos(w * t), math.sin(w * t)
        return np.array([x0[0] * c + x0[1] * s / w, -x0[0] * w * s + x0[1] * c])
