"""Forced Van der Pol oscillator ``x'' - mu (1 - x^2) x' + x = b v``."""

import math
from dataclasses import dataclass

import numpy as np

from deadzone_control.core.deadzone import DeadZoneParams
from deadzone_control.core.errors import ContractError
from deadzone_control.core.plant_base import Plant


@dataclass(frozen=True)
class VanDerPolParams:
    mu: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.b)):
            raise ContractError(f"Van der Pol parameters must be finite: {self}")


def vdp_rhs(state: np.ndarray, upsilon: float, t: float, params: VanDerPolParams) -> np.ndarray:
    """``[x2, mu (1 - x1^2) x2 - x1 + b v]``."""
    x1, x2 = state[0], state[1]
    return np.array([x2, params.mu * (1.0 - x1 * x1) * x2 - x1 + params.b * upsilon])


class VanDerPolPlant(Plant):
    """Van der Pol oscillator driven through a dead-zone actuator."""

    def __init__(self, params: VanDerPolParams, deadzone: DeadZoneParams):
        super().__init__("van_der_pol", deadzone)
        self.params = params

    @property
    def order(self) -> int:
        return 2

    def drift(self, x: np.ndarray, t: float) -> float:
        return self.params.mu * (1.0 - x[0] * x[0]) * x[1] - x[0]

    def input_gain(self, x: np.ndarray, t: float) -> float:
        return self.params.b

    def rhs(self, x: np.ndarray, upsilon: float, t: float) -> np.ndarray:
        return vdp_rhs(x, upsilon, t, self.params)
