"""Plant contract for n-th order systems ``x^(n) = f(x, t) + b(x, t) v``."""

from abc import ABC, abstractmethod
from typing import Protocol

import numpy as np

from .deadzone import DeadZoneParams, apply, residual


class PlantModel(Protocol):
    """Plant interface used by the closed-loop runner."""

    name: str
    deadzone: DeadZoneParams

    @property
    def order(self) -> int:
        """
        System order n.

        Returns:
            Length of the state vector [x, x', ..., x^(n-1)]
        """
        ...

    def drift(self, x: np.ndarray, t: float) -> float:
        """
        Drift term f(x, t).

        Args:
            x: State vector of length n
            t: Time in seconds

        Returns:
            Value of f at (x, t)
        """
        ...

    def input_gain(self, x: np.ndarray, t: float) -> float:
        """
        Input gain b(x, t).

        Args:
            x: State vector of length n
            t: Time in seconds

        Returns:
            Value of b at (x, t)
        """
        ...

    def actuate(self, u: float) -> float:
        """
        Pass a controller output through the dead-zone actuator.

        Args:
            u: Controller output

        Returns:
            Actuator output v
        """
        ...

    def residual(self, u: float) -> float:
        """True dead-zone residual d(u), recorded but never fed back."""
        ...

    def rhs(self, x: np.ndarray, upsilon: float, t: float) -> np.ndarray:
        """
        State derivative for a held actuator output.

        Args:
            x: State vector of length n
            upsilon: Actuator output, constant over the step
            t: Time in seconds

        Returns:
            Derivative vector of length n
        """
        ...


class Plant(ABC):
    """Base class for plants in companion form behind a dead-zone actuator."""

    def __init__(self, name: str, deadzone: DeadZoneParams):
        self.name = name
        self.deadzone = deadzone

    @property
    @abstractmethod
    def order(self) -> int:
        """System order n."""
        pass

    @abstractmethod
    def drift(self, x: np.ndarray, t: float) -> float:
        """Drift term f(x, t)."""
        pass

    @abstractmethod
    def input_gain(self, x: np.ndarray, t: float) -> float:
        """Input gain b(x, t)."""
        pass

    def actuate(self, u: float) -> float:
        """Dead-zone actuator output for controller output ``u``."""
        return apply(u, self.deadzone)

    def residual(self, u: float) -> float:
        """True dead-zone residual ``d(u)``; never shown to the controller."""
        return residual(u, self.deadzone)

    def rhs(self, x: np.ndarray, upsilon: float, t: float) -> np.ndarray:
        """``[x2, ..., xn, f + b v]``."""
        dx = np.empty(self.order)
        dx[:-1] = x[1:]
        dx[-1] = self.drift(x, t) + self.input_gain(x, t) * upsilon
        return dx
