"""Dead-zone control CLI application."""

from cleo.application import Application

from deadzone_control import __version__

from .commands.config_command import ConfigCommand
from .commands.simulate_command import SimulateCommand
from .commands.sweep_command import SweepCommand
from .commands.verify_command import VerifyCommand


class DeadZoneControlApplication(Application):
    """Dead-zone control CLI application."""

    def __init__(self):
        super().__init__("Dead-Zone Control", __version__)

        self.add(ConfigCommand())
        self.add(SimulateCommand())
        self.add(SweepCommand())
        self.add(VerifyCommand())


def main():
    """Main entry point."""
    app = DeadZoneControlApplication()
    return app.run()
