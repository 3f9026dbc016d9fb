"""Sweep command implementation."""

from pathlib import Path

from cleo.commands.command import Command
from cleo.helpers import option

from ...core.config import SWEEPABLE_KEYS
from ...core.errors import ConfigError
from ...export.sweep import run_sweep, write_sweep
from ..verbosity import configure_logging
from .run_options import CONFIG_OPTION, load_config, parse_values


class SweepCommand(Command):
    """Repeat the experiment over a list of values of one parameter."""

    name = "sweep"
    description = "Run one experiment per parameter value and write a metric table"

    options = [
        CONFIG_OPTION,
        option(
            "param",
            "p",
            f"Parameter to vary ({', '.join(SWEEPABLE_KEYS)})",
            flag=False,
            value_required=True,
        ),
        option("values", None, "Comma-separated values", flag=False, default=""),
        option("out", "o", "Output CSV file", flag=False, default="sweep.csv"),
        option("jobs", "j", "Worker processes", flag=False, default="1"),
    ]

    def handle(self):
        """Handle the command."""
        configure_logging(self.io)

        param = self.option("param")
        if not param:
            self.line_error("Invalid configuration: param: --param is required")
            return 2

        try:
            config = load_config(self.option("config"))
            values = parse_values(self.option("values"))
            jobs = self._jobs()
            rows = run_sweep(config, param, values, jobs=jobs)
        except ConfigError as e:
            self.line_error(f"Invalid configuration: {e.key}: {e.message}")
            return 2

        path = write_sweep(Path(self.option("out")), param, rows)
        for row in rows:
            self.line(
                f"{param}={row.value:g}: RMS x~ {row.rms_xtilde_final:.6g}, "
                f"max |u| {row.max_abs_u:.6g}, eps-convergence {row.status}"
            )
        self.info(f"Wrote {len(rows)} rows to {path}")
        return 0

    def _jobs(self) -> int:
        try:
            jobs = int(self.option("jobs"))
        except (TypeError, ValueError):
            raise ConfigError("jobs", f"must be an integer, got {self.option('jobs')!r}")
        if jobs < 1:
            raise ConfigError("jobs", "must be >= 1")
        return jobs
