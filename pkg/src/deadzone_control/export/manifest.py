"""``manifest.txt``: configuration echo, timing, paths and metrics of one run."""

import math
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from deadzone_control.core.config import Config, format_value, parse_config_text
from deadzone_control.core.controller import ControllerGains
from deadzone_control.core.errors import ContractError
from deadzone_control.core.fuzzy import FuzzyPartition
from deadzone_control.sim.metrics import Trajectory, compute_metrics
from deadzone_control.sim.runner import SimConfig, SimRecord
from deadzone_control.verify.oracle import fit_rule_outputs, lyapunov_series, power_balance

METRIC_PREFIX = "metric."
PATH_PREFIX = "path."


def summarize_run(
    records: Sequence[SimRecord],
    cfg: SimConfig,
    partition: Optional[FuzzyPartition] = None,
) -> Dict[str, Any]:
    """Metrics reported for a finished run.

    The surrogate terms need ``phi > 0`` and at least one sample; otherwise
    they are reported as ``n/a``.
    """
    metrics = compute_metrics(records, cfg.t_end, cfg.metric_window)
    summary: Dict[str, Any] = {
        "samples": len(records),
        "rms_xtilde_first": metrics.rms_first,
        "rms_xtilde_last": metrics.rms_last,
        "max_abs_xtilde_first": metrics.max_first,
        "max_abs_xtilde_last": metrics.max_last,
        "max_abs_epsilon": metrics.max_abs_epsilon,
        "max_abs_u": metrics.max_abs_u,
        "epsilon_convergence": metrics.epsilon_converged,
        "final_v_surrogate": "n/a",
        "dissipated": "n/a",
        "v_drop": "n/a",
    }
    if cfg.phi > 0 and records:
        partition = partition if partition is not None else cfg.build_partition()
        gains = ControllerGains(kappa=cfg.kappa, phi=cfg.phi, b=cfg.b, m=cfg.m)
        fit = fit_rule_outputs(partition, cfg.build_plant().deadzone)
        traj = Trajectory.from_records(records)
        values = lyapunov_series(traj.epsilon, traj.rule_outputs, fit.rule_outputs, gains)
        balance = power_balance(traj.epsilon, values, cfg.kappa, cfg.control_period)
        summary["final_v_surrogate"] = float(values[-1])
        summary["dissipated"] = balance.dissipated
        summary["v_drop"] = balance.drop
    return summary


def _fmt(value: Any) -> str:
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return format_value(value)


@dataclass
class RunManifest:
    """Everything needed to reproduce and locate one run."""

    config: Config
    started_at: datetime
    finished_at: datetime
    paths: Dict[str, Path] = field(default_factory=dict)
    metrics: Dict[str, Any] = field(default_factory=dict)

    def to_text(self) -> str:
        lines = [f"{key} = {value}" for key, value in self.config.to_text_dict().items()]
        lines.append(f"started_at = {self.started_at.isoformat()}")
        lines.append(f"finished_at = {self.finished_at.isoformat()}")
        lines.extend(f"{PATH_PREFIX}{name} = {path}" for name, path in self.paths.items())
        lines.extend(f"{METRIC_PREFIX}{name} = {_fmt(value)}" for name, value in self.metrics.items())
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")
        return path


def read_manifest(path: Path) -> Dict[str, str]:
    """Raw ``key = value`` pairs of a manifest file."""
    return parse_config_text(Path(path).read_text(encoding="utf-8"))


def manifest_config(entries: Dict[str, str]) -> Config:
    """Configuration echoed in a manifest, for re-running it."""
    data = {
        key: value
        for key, value in entries.items()
        if not key.startswith((METRIC_PREFIX, PATH_PREFIX))
        and key not in ("started_at", "finished_at")
    }
    if not data:
        raise ContractError("Manifest holds no configuration")
    return Config(data)
