"""Exceptions raised by the dead-zone control library."""

from typing import Optional


class DeadZoneControlError(Exception):
    """Base class for all library errors."""


class ContractError(DeadZoneControlError, ValueError):
    """A precondition on shapes, lengths or parameters was violated."""


class DomainError(DeadZoneControlError, ValueError):
    """A numeric input was outside the domain of an operation (e.g. non-finite)."""


class CoverageError(ContractError):
    """No membership function fires for the given input."""

    def __init__(self, value: float):
        super().__init__(f"No rule fires for u_hat={value!r}; partition does not cover it")
        self.value = value


class ConfigError(DeadZoneControlError, ValueError):
    """Invalid configuration; carries the offending key."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message


class DivergenceError(DeadZoneControlError, RuntimeError):
    """The simulated state left the admissible region."""

    def __init__(self, t: float, message: Optional[str] = None):
        super().__init__(message or f"Simulation diverged at t={t:.6f} s")
        self.t = t
