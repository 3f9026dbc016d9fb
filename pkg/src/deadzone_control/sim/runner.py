"""Multirate closed-loop simulation with a zero-order hold on the control."""

import logging
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from deadzone_control.core.config import Config
from deadzone_control.core.controller import (
    AdaptFn,
    AdaptiveFuzzyController,
    ControllerGains,
    ErrorFilter,
    adapt,
)
from deadzone_control.core.deadzone import DeadZoneParams, residual_bound
from deadzone_control.core.errors import DivergenceError
from deadzone_control.core.fuzzy import FuzzyPartition, partition_from_centers
from deadzone_control.core.plant_base import PlantModel
from deadzone_control.core.plant_getter import get_plant
from deadzone_control.sim.integrator import rk4_step
from deadzone_control.sim.reference import SineReference

logger = logging.getLogger(__name__)

# SimConfig field -> config key, where they differ.
_KEY_NAMES = {"lam": "lambda"}


@dataclass(frozen=True)
class SimConfig:
    """Resolved parameters of one closed-loop run."""

    t_end: float = 40.0
    plant_rate: int = 1000
    control_rate: int = 500
    x0: Tuple[float, ...] = (0.0, 0.0)
    plant: str = "van_der_pol"
    mu: float = 1.0
    b: float = 1.0
    m: float = 1.0
    delta_l: float = -0.4
    delta_r: float = 0.3
    lam: float = 0.6
    kappa: float = 10.0
    phi: float = 3.0
    centers: Tuple[float, ...] = (-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5)
    log_dhat: bool = False
    seedless: bool = True
    dhat_clamp: bool = False
    divergence_limit: float = 1e6
    metric_window: float = 10.0

    def __post_init__(self):
        object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))
        object.__setattr__(self, "centers", tuple(float(v) for v in self.centers))
        # Reuse the config validation so both entry points enforce the same rules.
        Config(self.to_config_dict())

    @classmethod
    def from_config(cls, config: Config) -> "SimConfig":
        values = config.to_dict()
        kwargs = {f.name: values[_KEY_NAMES.get(f.name, f.name)] for f in fields(cls)}
        return cls(**kwargs)

    def to_config_dict(self) -> Dict[str, Any]:
        return {_KEY_NAMES.get(k, k): v for k, v in asdict(self).items()}

    def to_config(self) -> Config:
        return Config(self.to_config_dict())

    def with_changes(self, **changes: Any) -> "SimConfig":
        return replace(self, **changes)

    @property
    def control_period(self) -> float:
        return 1.0 / self.control_rate

    @property
    def plant_step(self) -> float:
        return 1.0 / self.plant_rate

    @property
    def substeps(self) -> int:
        return self.plant_rate // self.control_rate

    @property
    def n_samples(self) -> int:
        return int(round(self.t_end * self.control_rate))

    def build_plant(self) -> PlantModel:
        return get_plant(self.to_config())

    def build_partition(self) -> FuzzyPartition:
        return partition_from_centers(self.centers)

    def build_controller(
        self,
        order: int,
        deadzone: DeadZoneParams,
        partition: Optional[FuzzyPartition] = None,
        adapt_fn: AdaptFn = adapt,
    ) -> AdaptiveFuzzyController:
        clamp = 10.0 * residual_bound(deadzone) if self.dhat_clamp else None
        return AdaptiveFuzzyController(
            ErrorFilter(order, self.lam),
            ControllerGains(kappa=self.kappa, phi=self.phi, b=self.b, m=self.m),
            partition if partition is not None else self.build_partition(),
            self.control_period,
            clamp_limit=clamp,
            adapt_fn=adapt_fn,
        )


@dataclass(frozen=True)
class SimRecord:
    """One control sample of the closed-loop log."""

    t: float
    state: Tuple[float, ...]
    x_d: Tuple[float, ...]
    x_tilde: Tuple[float, ...]
    epsilon: float
    u_hat: float
    u: float
    upsilon: float
    d_true: float
    d_hat: float
    rule_outputs: Tuple[float, ...]


def run_closed_loop(
    cfg: SimConfig,
    adapt_fn: AdaptFn = adapt,
    partition: Optional[FuzzyPartition] = None,
) -> List[SimRecord]:
    """
    Simulate the adaptive loop and return one record per control sample.

    Args:
        cfg: Run parameters
        adapt_fn: Rule-output update, replaceable for mutation checks
        partition: Partition override; defaults to one built from cfg.centers

    Returns:
        Records at t = k / control_rate for k = 0 .. n_samples - 1
    """
    plant = cfg.build_plant()
    reference = SineReference(plant.order)
    controller = cfg.build_controller(plant.order, plant.deadzone, partition, adapt_fn)

    x = np.array(cfg.x0, dtype=float)
    h = cfg.plant_step
    substeps = cfg.substeps
    limit = cfg.divergence_limit
    records: List[SimRecord] = []

    logger.info(
        f"Closed loop: {cfg.n_samples} samples at {cfg.control_rate} Hz, "
        f"plant at {cfg.plant_rate} Hz, phi={cfg.phi:g}"
    )

    for k in range(cfg.n_samples):
        t = k / cfg.control_rate
        ref = reference(t)
        out = controller.step(x, ref.x_d, ref.x_d_n, plant.drift(x, t))

        # The dead-zone is static, so one evaluation covers the whole hold.
        upsilon = plant.actuate(out.u)
        records.append(
            SimRecord(
                t=t,
                state=tuple(x.tolist()),
                x_d=tuple(ref.x_d.tolist()),
                x_tilde=tuple(out.x_tilde.tolist()),
                epsilon=out.epsilon,
                u_hat=out.u_hat,
                u=out.u,
                upsilon=upsilon,
                d_true=plant.residual(out.u),
                d_hat=out.d_hat,
                rule_outputs=tuple(out.rule_outputs.tolist()),
            )
        )

        for s in range(substeps):
            ts = t + s * h
            x = rk4_step(plant.rhs, x, upsilon, ts, h)
            if not np.all(np.abs(x) <= limit):
                raise DivergenceError(ts + h)

    logger.info(f"Closed loop finished with {len(records)} records")
    last = controller.state
    logger.debug(
        f"Last control sample: u_hat={last.last_u_hat:.6g}, "
        f"epsilon={last.last_epsilon:.6g}, d_hat={last.last_d_hat:.6g}"
    )
    return records


def run_unforced(
    plant: PlantModel,
    x0: Tuple[float, ...],
    t_end: float,
    rate: int = 1000,
) -> Tuple[np.ndarray, np.ndarray]:
    """Integrate the plant with zero actuator output; returns (t, states)."""
    h = 1.0 / rate
    steps = int(round(t_end * rate))
    times = np.arange(steps + 1) * h
    states = np.empty((steps + 1, plant.order))
    x = np.array(x0, dtype=float)
    states[0] = x
    for k in range(steps):
        x = rk4_step(plant.rhs, x, 0.0, k * h, h)
        states[k + 1] = x
    return times, states
