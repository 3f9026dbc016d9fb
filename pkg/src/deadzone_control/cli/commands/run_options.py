"""Option handling shared by the run commands."""

from pathlib import Path
from typing import Dict, List, Optional, Sequence

from cleo.helpers import option

from ...core.config import Config, ConfigManager
from ...core.errors import ConfigError

CONFIG_OPTION = option(
    "config",
    "c",
    "Experiment configuration file (key = value lines)",
    flag=False,
    value_required=True,
)


def load_config(path: Optional[str]) -> Config:
    """Configuration from ``path``, or the defaults when no path is given."""
    if not path:
        return Config()
    config = ConfigManager.for_path(Path(path)).load_config()
    if config is None:
        raise ConfigError("config", f"file not found: {path}")
    return config


def parse_assignments(items: Sequence[str]) -> Dict[str, str]:
    """``key=value`` strings from repeated ``--set`` options."""
    overrides: Dict[str, str] = {}
    for item in items:
        if "=" not in item:
            raise ConfigError("set", f"expected key=value, got {item!r}")
        key, value = (part.strip() for part in item.split("=", 1))
        overrides[key] = value
    return overrides


def parse_values(text: Optional[str], key: str = "values") -> List[float]:
    """Comma-separated floats; an empty string gives an empty list."""
    if text is None or not text.strip():
        return []
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ConfigError(key, f"invalid number list {text!r} ({e})")
