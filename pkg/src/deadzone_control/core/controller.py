"""Adaptive fuzzy controller for plants driven through an unknown dead-zone.

Control law::

    u_hat = (-f + x_d^(n) - cbar^T x~) / (b m)
    u     = u_hat - kappa * eps / (b m) + d_hat(u_hat)

with the combined error ``eps = c^T x~`` and the rule outputs adapted by
``dD/dt = -phi * eps * Psi(u_hat)``, integrated with one explicit Euler step
per control sample.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ContractError, DomainError
from .fuzzy import FuzzyPartition, check_rule_outputs, infer, zero_rule_outputs

logger = logging.getLogger(__name__)


def binomial_coeffs(n: int) -> list:
    """``[C(n-1, 0), ..., C(n-1, n-1)]`` for system order ``n``."""
    if not isinstance(n, int) or n < 1:
        raise ContractError(f"System order must be an integer >= 1, got {n!r}")
    return [math.comb(n - 1, i) for i in range(n)]


@dataclass(frozen=True)
class ErrorFilter:
    """Coefficients of the combined tracking error measure.

    ``c`` is ordered ``[c_{n-1} lam^{n-1}, ..., c_1 lam, c_0]`` against
    ``x~ = [x~, x~', ..., x~^(n-1)]``; ``c_bar`` is ``c`` with the last entry
    zeroed and acts on the derivative vector ``[x~', ..., x~^(n)]``.
    """

    n: int
    lam: float
    c: np.ndarray = field(init=False, repr=False, compare=False)
    c_bar: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coeffs = binomial_coeffs(self.n)
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ContractError(f"Filter bandwidth must be positive, got lambda={self.lam}")

        # Entry j multiplies x~^(j): C(n-1, n-1-j) * lam^(n-1-j).
        c = np.array(
            [coeffs[self.n - 1 - j] * self.lam ** (self.n - 1 - j) for j in range(self.n)],
            dtype=float,
        )
        c_bar = c.copy()
        c_bar[-1] = 0.0
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_bar", c_bar)

    def _check(self, x_tilde: np.ndarray) -> np.ndarray:
        x_tilde = np.asarray(x_tilde, dtype=float)
        if x_tilde.shape[-1:] != (self.n,):
            raise ContractError(
                f"Error vector has shape {x_tilde.shape}, expected last dimension {self.n}"
            )
        return x_tilde

    def sliding_term(self, x_tilde: np.ndarray) -> float:
        """``cbar^T`` applied to the derivatives of ``x~`` (``lam * x~'`` for n=2)."""
        x_tilde = self._check(x_tilde)
        # x~^(n) is multiplied by the zeroed entry, so it is never needed.
        return float(np.dot(self.c_bar[:-1], x_tilde[1:]))


@dataclass(frozen=True)
class ControllerGains:
    """Feedback gain, adaptation rate and the known input gain and slope."""

    kappa: float
    phi: float
    b: float
    m: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ContractError(f"kappa must be strictly positive, got {self.kappa}")
        # phi == 0 freezes the rule outputs (ablation runs).
        if not (math.isfinite(self.phi) and self.phi >= 0):
            raise ContractError(f"phi must be non-negative, got {self.phi}")
        if not (math.isfinite(self.bm) and self.bm != 0):
            raise ContractError(f"b*m must be finite and non-zero, got {self.bm}")

    @property
    def bm(self) -> float:
        return self.b * self.m


@dataclass
class ControllerState:
    """Adapted rule outputs plus the values of the most recent step."""

    rule_outputs: np.ndarray
    last_u_hat: float = 0.0
    last_epsilon: float = 0.0
    last_d_hat: float = 0.0


@dataclass(frozen=True)
class ControlOutput:
    """Everything computed during one control sample."""

    x_tilde: np.ndarray
    epsilon: float
    u_hat: float
    psi: np.ndarray
    d_hat: float
    u: float
    rule_outputs: np.ndarray


def combined_error(x_tilde: Sequence[float], filt: ErrorFilter) -> float:
    """``eps = c^T x~``."""
    return float(np.dot(filt.c, filt._check(x_tilde)))


def equivalent_control(
    f: float,
    x_d_n: float,
    x_tilde: Sequence[float],
    gains: ControllerGains,
    filt: ErrorFilter,
) -> float:
    """Model-inverting part of the law, ``(-f + x_d^(n) - cbar^T x~) / (b m)``."""
    if not (math.isfinite(f) and math.isfinite(x_d_n)):
        raise DomainError(f"Drift and reference must be finite, got f={f}, x_d_n={x_d_n}")
    return (-f + x_d_n - filt.sliding_term(x_tilde)) / gains.bm


def control(u_hat: float, epsilon: float, d_hat: float, gains: ControllerGains) -> float:
    """Controller output ``u = u_hat - kappa * eps / (b m) + d_hat``."""
    if not all(math.isfinite(v) for v in (u_hat, epsilon, d_hat)):
        raise DomainError(
            f"Non-finite control inputs: u_hat={u_hat}, eps={epsilon}, d_hat={d_hat}"
        )
    return u_hat - gains.kappa * epsilon / gains.bm + d_hat


def adapt(
    rule_outputs: np.ndarray,
    epsilon: float,
    psi: np.ndarray,
    phi: float,
    dt: float,
) -> np.ndarray:
    """One explicit Euler step of ``dD/dt = -phi * eps * Psi``.

    The step depends on ``phi`` and ``dt`` only through their product.
    """
    if not math.isfinite(epsilon):
        raise DomainError(f"Combined error must be finite, got {epsilon}")
    if dt <= 0:
        raise ContractError(f"Controller period must be positive, got {dt}")
    psi = np.asarray(psi, dtype=float)
    if psi.shape != np.shape(rule_outputs):
        raise ContractError(
            f"Basis of shape {psi.shape} does not match rule outputs {np.shape(rule_outputs)}"
        )
    rate = phi * dt
    return rule_outputs - (rate * epsilon) * psi


AdaptFn = Callable[[np.ndarray, float, np.ndarray, float, float], np.ndarray]


class AdaptiveFuzzyController:
    """Single-threaded control state machine; one :meth:`step` per control sample."""

    def __init__(
        self,
        filt: ErrorFilter,
        gains: ControllerGains,
        partition: FuzzyPartition,
        dt: float,
        rule_outputs: Optional[np.ndarray] = None,
        clamp_limit: Optional[float] = None,
        adapt_fn: AdaptFn = adapt,
    ):
        if dt <= 0:
            raise ContractError(f"Controller period must be positive, got {dt}")
        if clamp_limit is not None and clamp_limit <= 0:
            raise ContractError(f"Clamp limit must be positive, got {clamp_limit}")

        self.filt = filt
        self.gains = gains
        self.partition = partition
        self.dt = dt
        self.clamp_limit = clamp_limit
        self._adapt = adapt_fn
        if clamp_limit is not None:
            logger.info(f"Rule outputs clamped to +/-{clamp_limit:g}")

        initial = (
            zero_rule_outputs(partition)
            if rule_outputs is None
            else check_rule_outputs(rule_outputs, partition).copy()
        )
        self.state = ControllerState(rule_outputs=initial)

    @property
    def order(self) -> int:
        return self.filt.n

    def step(
        self,
        x: np.ndarray,
        x_d: np.ndarray,
        x_d_n: float,
        f: float,
    ) -> ControlOutput:
        """Compute the control output for one sample and adapt the rule outputs."""
        x_tilde = np.asarray(x, dtype=float) - np.asarray(x_d, dtype=float)
        epsilon = combined_error(x_tilde, self.filt)
        u_hat = equivalent_control(f, x_d_n, x_tilde, self.gains, self.filt)

        psi = self.partition.basis(u_hat)
        used = self.state.rule_outputs
        d_hat = infer(used, psi)
        u = control(u_hat, epsilon, d_hat, self.gains)

        if self.gains.phi > 0:
            updated = self._adapt(used, epsilon, psi, self.gains.phi, self.dt)
            if self.clamp_limit is not None:
                updated = np.clip(updated, -self.clamp_limit, self.clamp_limit)
            if not np.all(np.isfinite(updated)):
                raise DomainError("Rule outputs became non-finite during adaptation")
            self.state.rule_outputs = updated

        self.state.last_u_hat = u_hat
        self.state.last_epsilon = epsilon
        self.state.last_d_hat = d_hat

        return ControlOutput(
            x_tilde=x_tilde,
            epsilon=epsilon,
            u_hat=u_hat,
            psi=psi,
            d_hat=d_hat,
            u=u,
            rule_outputs=used,
        )
