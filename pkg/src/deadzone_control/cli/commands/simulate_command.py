"""Simulate command implementation."""

from datetime import datetime
from pathlib import Path
from typing import Dict

from cleo.commands.command import Command
from cleo.helpers import option

from ...core.errors import ConfigError, DivergenceError
from ...export.manifest import RunManifest, summarize_run
from ...export.timeseries import write_timeseries
from ...sim.runner import SimConfig, run_closed_loop
from ..verbosity import configure_logging
from .run_options import CONFIG_OPTION, load_config, parse_assignments

# Option name -> config key for the shortcut flags.
FLAG_KEYS = {
    "t-end": "t_end",
    "phi": "phi",
    "kappa": "kappa",
    "lambda": "lambda",
    "mu": "mu",
    "delta-l": "delta_l",
    "delta-r": "delta_r",
}


class SimulateCommand(Command):
    """Run the closed-loop experiment and write its time series and manifest."""

    name = "simulate"
    description = "Run the closed-loop experiment and write timeseries.csv and manifest.txt"

    options = [
        CONFIG_OPTION,
        option("out", "o", "Output directory", flag=False, default="results"),
        *[
            option(flag_name, None, f"Override '{key}'", flag=False, value_required=True)
            for flag_name, key in FLAG_KEYS.items()
        ],
        option(
            "set",
            "s",
            "Override any key (key=value); may be repeated",
            flag=False,
            multiple=True,
        ),
    ]

    def handle(self):
        """Handle the command."""
        configure_logging(self.io)

        try:
            config = load_config(self.option("config"))
            config = config.with_overrides(self._overrides())
            cfg = SimConfig.from_config(config)
        except ConfigError as e:
            self.line_error(f"Invalid configuration: {e.key}: {e.message}")
            return 2

        out_dir = Path(self.option("out"))
        started = datetime.now()
        try:
            records = run_closed_loop(cfg)
        except DivergenceError as e:
            self.line_error(f"Simulation diverged at t={e.t:.6f} s")
            return 3
        finished = datetime.now()

        csv_path = write_timeseries(out_dir / "timeseries.csv", records, cfg.log_dhat, len(cfg.centers))
        metrics = summarize_run(records, cfg)
        manifest = RunManifest(
            config=cfg.to_config(),
            started_at=started,
            finished_at=finished,
            paths={"timeseries": csv_path},
            metrics=metrics,
        )
        manifest_path = manifest.write(out_dir / "manifest.txt")

        self.info(f"Wrote {len(records)} records to {csv_path}")
        self.info(f"Manifest: {manifest_path}")
        if records:
            self.line(
                f"RMS x~ over the last {cfg.metric_window:g} s: {metrics['rms_xtilde_last']:.6g}"
            )
        return 0

    def _overrides(self) -> Dict[str, str]:
        """Flag overrides; ``--set`` entries win over the shortcut flags."""
        overrides = {
            key: self.option(flag_name)
            for flag_name, key in FLAG_KEYS.items()
            if self.option(flag_name) is not None
        }
        overrides.update(parse_assignments(self.option("set") or []))
        return overrides
