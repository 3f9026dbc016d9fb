"""Configuration management core functionality."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from .errors import ConfigError

PLANTS = ("van_der_pol", "harmonic")


def _parse_float(text: Any) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("must be finite")
    return value


def _parse_int(text: Any) -> int:
    if isinstance(text, bool):
        raise ValueError("must be an integer")
    if isinstance(text, float):
        if not text.is_integer():
            raise ValueError("must be an integer")
        return int(text)
    return int(str(text).strip())


def _parse_bool(text: Any) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError("must be true or false")


def _parse_float_list(text: Any) -> Tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [item for item in str(text).split(",") if item.strip()]
    if not items:
        raise ValueError("must be a non-empty comma-separated list")
    return tuple(_parse_float(item) for item in items)


def _parse_plant(text: Any) -> str:
    name = str(text).strip()
    if name not in PLANTS:
        raise ValueError(f"must be one of: {', '.join(PLANTS)}")
    return name


def format_value(value: Any) -> str:
    """Render a resolved value the way the config file spells it."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    return str(value)


@dataclass(frozen=True)
class ConfigKey:
    parse: Callable[[Any], Any]
    default: Any
    description: str


# Defaults reproduce the Van der Pol experiment.
CONFIG_SCHEMA: Dict[str, ConfigKey] = {
    "t_end": ConfigKey(_parse_float, 40.0, "Simulated duration in seconds"),
    "plant_rate": ConfigKey(_parse_int, 1000, "Plant integration rate in Hz"),
    "control_rate": ConfigKey(_parse_int, 500, "Controller sampling rate in Hz"),
    "x0": ConfigKey(_parse_float_list, (0.0, 0.0), "Initial state [x, x', ...]"),
    "plant": ConfigKey(_parse_plant, "van_der_pol", "Plant model"),
    "mu": ConfigKey(_parse_float, 1.0, "Van der Pol damping parameter"),
    "b": ConfigKey(_parse_float, 1.0, "Input gain"),
    "m": ConfigKey(_parse_float, 1.0, "Dead-zone slope"),
    "delta_l": ConfigKey(_parse_float, -0.4, "Left dead-band edge"),
    "delta_r": ConfigKey(_parse_float, 0.3, "Right dead-band edge"),
    "lambda": ConfigKey(_parse_float, 0.6, "Error filter bandwidth"),
    "kappa": ConfigKey(_parse_float, 10.0, "Error feedback gain"),
    "phi": ConfigKey(_parse_float, 3.0, "Adaptation rate (0 freezes the rule outputs)"),
    "centers": ConfigKey(
        _parse_float_list,
        (-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5),
        "Membership function centers (strictly increasing)",
    ),
    "log_dhat": ConfigKey(_parse_bool, False, "Write rule outputs Dhat_r to the CSV"),
    "seedless": ConfigKey(_parse_bool, True, "Reserved; runs use no randomness"),
    "dhat_clamp": ConfigKey(_parse_bool, False, "Clamp rule outputs to 10x the residual bound"),
    "divergence_limit": ConfigKey(_parse_float, 1e6, "Abort when any |state| exceeds this"),
    "metric_window": ConfigKey(_parse_float, 10.0, "Window in seconds for manifest metrics"),
}

SWEEPABLE_KEYS = ("kappa", "phi", "lambda", "delta_l", "delta_r", "mu", "m", "b")


class Config:
    """Configuration wrapper class holding resolved, typed values."""

    def __init__(self, config_data: Optional[Dict[str, Any]] = None):
        self._explicit = set((config_data or {}).keys())
        self._config: Dict[str, Any] = {}
        for key, value in (config_data or {}).items():
            self._config[key] = self._parse(key, value)
        self._validate_config()

    @staticmethod
    def _parse(key: str, value: Any) -> Any:
        if key not in CONFIG_SCHEMA:
            raise ConfigError(key, "unknown configuration key")
        try:
            return CONFIG_SCHEMA[key].parse(value)
        except (TypeError, ValueError) as e:
            raise ConfigError(key, f"invalid value {value!r} ({e})")

    def get(self, key: str, default: Any = None) -> Any:
        """Get a resolved value, falling back to the schema default."""
        if key in self._config:
            return self._config[key]
        if key in CONFIG_SCHEMA:
            return CONFIG_SCHEMA[key].default
        return default

    def set(self, key: str, value: Any) -> None:
        """Set a value (string or typed) and re-validate."""
        previous = self._config.get(key)
        had_key = key in self._config
        self._config[key] = self._parse(key, value)
        try:
            self._validate_config()
        except ConfigError:
            if had_key:
                self._config[key] = previous
            else:
                del self._config[key]
            raise
        self._explicit.add(key)

    def with_overrides(self, overrides: Dict[str, Any]) -> "Config":
        """Copy with ``overrides`` applied on top of the current values."""
        data = {key: self._config[key] for key in self._explicit if key in self._config}
        data.update(overrides)
        return Config(data)

    def items(self) -> Iterator[Tuple[str, Any]]:
        """All resolved (key, value) pairs, defaults included, in schema order."""
        return iter(self.to_dict().items())

    def keys(self) -> Iterator[str]:
        return iter(CONFIG_SCHEMA.keys())

    def values(self) -> Iterator[Any]:
        return iter(self.to_dict().values())

    def explicit_keys(self) -> List[str]:
        """Keys given explicitly rather than defaulted."""
        return [key for key in CONFIG_SCHEMA if key in self._explicit]

    def _validate_config(self) -> None:
        """Validate ranges and cross-key constraints."""
        g = self.get

        if g("t_end") < 0:
            raise ConfigError("t_end", "must be >= 0")
        for key in ("plant_rate", "control_rate"):
            if g(key) <= 0:
                raise ConfigError(key, "must be a positive integer")
        if g("plant_rate") % g("control_rate") != 0:
            raise ConfigError(
                "plant_rate",
                f"must be an integer multiple of control_rate ({g('control_rate')})",
            )
        if g("m") <= 0:
            raise ConfigError("m", "dead-zone slope must be positive")
        if g("delta_l") >= 0:
            raise ConfigError("delta_l", "must be negative")
        if g("delta_r") <= 0:
            raise ConfigError("delta_r", "must be positive")
        if g("b") * g("m") == 0:
            raise ConfigError("b", "b*m must be non-zero")
        if g("lambda") <= 0:
            raise ConfigError("lambda", "must be positive")
        if g("kappa") <= 0:
            raise ConfigError("kappa", "must be positive")
        if g("phi") < 0:
            raise ConfigError("phi", "must be >= 0")

        centers = g("centers")
        if len(centers) < 2:
            raise ConfigError("centers", "needs at least two values")
        if not all(a < b for a, b in zip(centers, centers[1:])):
            raise ConfigError("centers", "must be strictly increasing")

        # Every supported plant is second order.
        if len(g("x0")) != 2:
            raise ConfigError("x0", f"needs 2 values for plant {g('plant')}")
        if g("divergence_limit") <= 0:
            raise ConfigError("divergence_limit", "must be positive")
        if g("metric_window") <= 0:
            raise ConfigError("metric_window", "must be positive")

    def to_dict(self) -> Dict[str, Any]:
        """All resolved values, defaults included."""
        return {key: self.get(key) for key in CONFIG_SCHEMA}

    def to_text_dict(self) -> Dict[str, str]:
        """All resolved values rendered as config-file strings."""
        return {key: format_value(value) for key, value in self.items()}

    def __getitem__(self, key: str) -> Any:
        if key not in CONFIG_SCHEMA:
            raise KeyError(key)
        return self.get(key)

    def __setitem__(self, key: str, value: Any) -> None:
        self.set(key, value)

    def __contains__(self, key: str) -> bool:
        return key in CONFIG_SCHEMA

    def __iter__(self):
        return iter(CONFIG_SCHEMA)

    def __len__(self) -> int:
        return len(CONFIG_SCHEMA)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Config) and self.to_dict() == other.to_dict()


def parse_config_text(text: str) -> Dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    data: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}", "missing key")
        if key in data:
            raise ConfigError(key, f"duplicate key on line {lineno}")
        data[key] = value
    return data


def render_config_text(config: Config, with_comments: bool = True) -> str:
    lines = []
    for key, value in config.to_text_dict().items():
        if with_comments:
            lines.append(f"# {CONFIG_SCHEMA[key].description}")
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


class ConfigManager:
    """Core configuration management functionality."""

    def __init__(
        self,
        config_dir: Optional[Path] = None,
        config_file: str = "experiment.conf",
    ):
        if config_dir is None:
            config_dir = Path.cwd() / ".deadzone-control"

        self.config_dir = Path(config_dir)
        self.config_file = config_file
        self.config_path = self.config_dir / config_file

    @classmethod
    def for_path(cls, path: Path) -> "ConfigManager":
        path = Path(path)
        return cls(path.parent, path.name)

    def init(self) -> None:
        """Write a configuration holding only defaults."""
        self.save_config(Config())

    def load_config(self) -> Optional[Config]:
        """Load configuration from file; ``None`` if the file does not exist."""
        if not self.config_path.exists():
            return None

        try:
            text = self.config_path.read_text(encoding="utf-8")
        except OSError as e:
            raise RuntimeError(f"Failed to load config: {e}")
        return Config(parse_config_text(text))

    def save_config(self, config: Config, with_comments: bool = True) -> None:
        """Save configuration to file."""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            self.config_path.write_text(
                render_config_text(config, with_comments), encoding="utf-8"
            )
        except OSError as e:
            raise RuntimeError(f"Failed to save config: {e}")

    def create_sample_config(self) -> Path:
        """Create a commented sample configuration with the experiment defaults."""
        self.save_config(Config(), with_comments=True)
        return self.config_path

    def validate_config(self, config: Optional[Config]) -> bool:
        """Re-validate a configuration without raising."""
        if not config:
            return False
        try:
            Config(config.to_dict())
            return True
        except ConfigError:
            return False

    def get_config_info(self) -> Dict[str, Any]:
        """Get configuration information."""
        try:
            config = self.load_config()
            valid = config is not None
        except ConfigError:
            config, valid = None, False
        return {
            "path": str(self.config_path),
            "exists": self.config_path.exists(),
            "valid": valid,
            "explicit_keys": config.explicit_keys() if config else [],
        }
