"""Tests for config module."""

import pytest

from deadzone_control.core.config import (
    CONFIG_SCHEMA,
    Config,
    ConfigManager,
    parse_config_text,
    render_config_text,
)
from deadzone_control.core.errors import ConfigError


@pytest.fixture
def config_manager(test_env):
    """Create a ConfigManager instance with test environment."""
    return ConfigManager(config_dir=test_env["result_outputs"])


def test_init_default_config(config_manager, test_env):
    """Test writing and reading back the experiment defaults."""
    config_manager.init()
    config = config_manager.load_config()

    assert config == Config()
    assert config.get("kappa") == 10.0
    assert config.get("centers") == (-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5)

    # Partial comparison with the reference file
    written = config_manager.config_path.read_text()
    sample = (test_env["sample_outputs"] / "experiment.conf").read_text()
    for line in sample.splitlines():
        if line and not line.startswith("#"):
            assert line in written


def test_sample_config_is_commented(config_manager):
    path = config_manager.create_sample_config()
    text = path.read_text()
    assert "# Adaptation rate" in text
    assert "phi = 3.0" in text
    assert set(parse_config_text(text)) == set(CONFIG_SCHEMA)


def test_load_missing_config(test_env):
    manager = ConfigManager(test_env["result_outputs"], "does_not_exist.conf")
    assert manager.load_config() is None
    assert manager.get_config_info()["exists"] is False


def test_load_partial_config(test_env):
    """Keys missing from the file fall back to defaults."""
    manager = ConfigManager(test_env["sample_outputs"], "ablation.conf")
    config = manager.load_config()
    assert config.get("phi") == 0.0
    assert config.get("t_end") == 40.0
    assert config.explicit_keys() == ["phi"]


def test_invalid_config_file_names_key(test_env):
    manager = ConfigManager(test_env["sample_outputs"], "invalid.conf")
    with pytest.raises(ConfigError) as excinfo:
        manager.load_config()
    assert excinfo.value.key == "delta_r"
    info = manager.get_config_info()
    assert info["exists"] is True and info["valid"] is False


@pytest.mark.parametrize(
    "data, key",
    [
        ({"kappa": "0"}, "kappa"),
        ({"phi": "-1"}, "phi"),
        ({"delta_l": "0.1"}, "delta_l"),
        ({"m": "0"}, "m"),
        ({"plant_rate": "750"}, "plant_rate"),
        ({"control_rate": "0"}, "control_rate"),
        ({"centers": "0, 0.1, 0.1"}, "centers"),
        ({"centers": "1"}, "centers"),
        ({"x0": "1, 2, 3"}, "x0"),
        ({"t_end": "-1"}, "t_end"),
        ({"t_end": "nan"}, "t_end"),
        ({"plant": "duffing"}, "plant"),
        ({"log_dhat": "maybe"}, "log_dhat"),
        ({"gain": "1"}, "gain"),
    ],
)
def test_config_validation(data, key):
    with pytest.raises(ConfigError) as excinfo:
        Config(data)
    assert excinfo.value.key == key


def test_config_get_set():
    config = Config({"phi": "2.5"})
    assert config.get("phi") == 2.5
    assert config["lambda"] == 0.6
    assert config.get("nonexistent", "default") == "default"

    config.set("kappa", "20")
    assert config.get("kappa") == 20.0

    # A rejected value leaves the previous one in place.
    with pytest.raises(ConfigError):
        config.set("kappa", "-5")
    assert config.get("kappa") == 20.0
    with pytest.raises(ConfigError):
        config.set("delta_r", "-1")
    assert config.get("delta_r") == 0.3
    assert "delta_r" not in config.explicit_keys()


def test_with_overrides_keeps_original():
    config = Config({"phi": "2"})
    changed = config.with_overrides({"kappa": "5"})
    assert changed.get("phi") == 2.0 and changed.get("kappa") == 5.0
    assert config.get("kappa") == 10.0


def test_to_dict_has_every_key():
    assert list(Config().to_dict()) == list(CONFIG_SCHEMA)
    assert len(Config()) == len(CONFIG_SCHEMA)


def test_parse_config_text():
    text = "# comment\nkappa = 5  # inline\n\nx0 = 2, 0\n"
    assert parse_config_text(text) == {"kappa": "5", "x0": "2, 0"}

    with pytest.raises(ConfigError, match="line 1"):
        parse_config_text("kappa 5")
    with pytest.raises(ConfigError) as excinfo:
        parse_config_text("phi = 1\nphi = 2")
    assert excinfo.value.key == "phi"


def test_render_round_trip():
    config = Config({"x0": "2, 0", "log_dhat": "yes", "mu": "1.5"})
    again = Config(parse_config_text(render_config_text(config, with_comments=False)))
    assert again == config
    assert again.get("x0") == (2.0, 0.0)
    assert again.get("log_dhat") is True


def test_config_manager_save_load(config_manager):
    config = Config({"kappa": "25", "centers": "-1, 0, 1"})
    config_manager.save_config(config)
    loaded = config_manager.load_config()
    assert loaded.get("kappa") == 25.0
    assert loaded.get("centers") == (-1.0, 0.0, 1.0)
    assert config_manager.validate_config(loaded) is True
    assert config_manager.validate_config(None) is False
