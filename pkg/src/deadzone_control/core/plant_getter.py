"""Plant construction from configuration."""

import math
from typing import Dict

from .config import Config, PLANTS
from .deadzone import DeadZoneParams
from .errors import ConfigError, ContractError
from .plant_base import Plant
from deadzone_control.plants.harmonic import HarmonicPlant
from deadzone_control.plants.van_der_pol import VanDerPolParams, VanDerPolPlant

DEADZONE_KEYS = ("m", "delta_l", "delta_r")


def _offending_key(values: Dict[str, float]) -> str:
    """Key of the first dead-zone value that breaks its range rule."""
    for key in DEADZONE_KEYS:
        if not math.isfinite(values[key]):
            return key
    if values["m"] <= 0:
        return "m"
    if not values["delta_l"] < 0:
        return "delta_l"
    return "delta_r"


def get_deadzone(config: Config) -> DeadZoneParams:
    """True dead-zone of the actuator described by ``config``."""
    values = {key: config.get(key) for key in DEADZONE_KEYS}
    try:
        return DeadZoneParams(**values)
    except ContractError as e:
        raise ConfigError(_offending_key(values), str(e))


def get_plant(config: Config) -> Plant:
    """Get plant instance by the configured ``plant`` name."""
    plant_type = config.get("plant")
    deadzone = get_deadzone(config)

    if plant_type == "van_der_pol":
        return VanDerPolPlant(VanDerPolParams(mu=config.get("mu"), b=config.get("b")), deadzone)
    elif plant_type == "harmonic":
        return HarmonicPlant(deadzone, b=config.get("b"))

    raise ConfigError("plant", f"must be one of: {', '.join(PLANTS)}")
