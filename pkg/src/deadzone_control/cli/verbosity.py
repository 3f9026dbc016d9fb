"""Map cleo verbosity flags onto the standard logging levels."""

import logging

from cleo.io.io import IO


def log_level(io: IO) -> int:
    if io.is_debug():
        return logging.DEBUG
    if io.is_verbose():
        return logging.INFO
    return logging.WARNING


def configure_logging(io: IO) -> None:
    """``-v``/``-vv`` show progress at INFO, ``-vvv`` adds DEBUG."""
    level = log_level(io)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s", level=level)
    logging.getLogger("deadzone_control").setLevel(level)
