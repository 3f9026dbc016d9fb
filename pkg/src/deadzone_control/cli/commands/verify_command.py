"""Verify command implementation."""

from cleo.commands.command import Command
from cleo.helpers import option

from ...core.errors import ConfigError, ContractError
from ...sim.runner import SimConfig
from ...verify.properties import VerificationSuite
from ..verbosity import configure_logging
from .run_options import CONFIG_OPTION, load_config


class VerifyCommand(Command):
    """Check the closed-loop properties numerically."""

    name = "verify"
    description = "Run the property suite; exit 0 only if every property holds"

    options = [
        CONFIG_OPTION,
        option(
            "only",
            None,
            "Comma-separated subset of properties to run",
            flag=False,
            value_required=True,
        ),
    ]

    def handle(self):
        """Handle the command."""
        configure_logging(self.io)

        try:
            cfg = SimConfig.from_config(load_config(self.option("config")))
        except ConfigError as e:
            self.line_error(f"Invalid configuration: {e.key}: {e.message}")
            return 2

        suite = self._get_suite(cfg)
        only = self.option("only")
        names = [name.strip() for name in only.split(",") if name.strip()] if only else None
        try:
            results = suite.run(names)
        except ContractError as e:
            self.line_error(str(e))
            return 2

        failed = [result for result in results if not result.passed]
        for result in results:
            status = "<info>PASS</info>" if result.passed else "<error>FAIL</error>"
            self.line(f"{status} {result.name}: {result.detail}")
            if not result.passed and result.witness:
                self.line(f"     witness: {result.format_witness()}")

        self.line("")
        if failed:
            self.line_error(
                f"{len(failed)} of {len(results)} properties failed: "
                + ", ".join(result.name for result in failed)
            )
            return 1
        self.info(f"All {len(results)} properties hold")
        return 0

    def _get_suite(self, cfg: SimConfig) -> VerificationSuite:
        """Get the verification suite for ``cfg``."""
        return VerificationSuite(cfg)
