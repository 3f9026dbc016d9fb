"""Parameter sweeps: one closed-loop run per value, one table row per run."""

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence

from deadzone_control.core.config import SWEEPABLE_KEYS, Config
from deadzone_control.core.errors import ConfigError, DivergenceError
from deadzone_control.sim.metrics import compute_metrics
from deadzone_control.sim.runner import SimConfig, run_closed_loop

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    value: float
    rms_xtilde_final: float
    max_abs_u: float
    status: str  # pass, fail or diverged


def check_param(param: str) -> None:
    if param not in SWEEPABLE_KEYS:
        raise ConfigError("param", f"cannot sweep {param!r}; choose one of: {', '.join(SWEEPABLE_KEYS)}")


def sweep_configs(config: Config, param: str, values: Sequence[float]) -> List[SimConfig]:
    """Validated run configurations, one per value."""
    check_param(param)
    return [SimConfig.from_config(config.with_overrides({param: value})) for value in values]


def run_point(cfg: SimConfig, value: float) -> SweepRow:
    """Single sweep point; module level so worker processes can pickle it."""
    try:
        records = run_closed_loop(cfg)
    except DivergenceError as e:
        logger.warning(f"Sweep value {value:g} diverged at t={e.t:.3f} s")
        return SweepRow(value, math.nan, math.nan, "diverged")
    metrics = compute_metrics(records, cfg.t_end, cfg.metric_window)
    return SweepRow(
        value,
        metrics.rms_last,
        metrics.max_abs_u,
        "pass" if metrics.epsilon_converged else "fail",
    )


def run_sweep(config: Config, param: str, values: Sequence[float], jobs: int = 1) -> List[SweepRow]:
    """Run every value; rows keep the order of ``values``."""
    configs = sweep_configs(config, param, values)
    values = [float(v) for v in values]
    logger.info(f"Sweeping {param} over {len(values)} values with {jobs} job(s)")

    if jobs <= 1 or len(configs) <= 1:
        return [run_point(cfg, value) for cfg, value in zip(configs, values)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_point, configs, values))


def render_sweep(param: str, rows: Sequence[SweepRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([param, "rms_xtilde_final", "max_abs_u", "epsilon_convergence"])
    for row in rows:
        writer.writerow(
            [f"{row.value:.17g}", f"{row.rms_xtilde_final:.17g}", f"{row.max_abs_u:.17g}", row.status]
        )
    return buffer.getvalue()


def write_sweep(path: Path, param: str, rows: Sequence[SweepRow]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_sweep(param, rows), encoding="utf-8")
    return path
