"""Common test fixtures."""

from pathlib import Path

import pytest

from deadzone_control.core.deadzone import DeadZoneParams
from deadzone_control.core.fuzzy import default_partition
from deadzone_control.sim.runner import SimConfig, run_closed_loop


@pytest.fixture(scope="session")
def test_env():
    """Get test environment paths."""
    base_dir = Path(__file__).parent
    env = {
        "base": base_dir,
        "sample_outputs": base_dir / "environment" / "sample_outputs",
        "result_outputs": base_dir / "environment" / "result_outputs",
    }
    env["result_outputs"].mkdir(parents=True, exist_ok=True)
    return env


@pytest.fixture
def deadzone():
    """Dead-zone of the Van der Pol experiment."""
    return DeadZoneParams(m=1.0, delta_l=-0.4, delta_r=0.3)


@pytest.fixture
def partition():
    return default_partition()


@pytest.fixture
def short_config():
    """Experiment parameters over a 2 s horizon."""
    return SimConfig(t_end=2.0)


@pytest.fixture(scope="session")
def experiment_records():
    """Full 40 s run with the default configuration, shared across tests."""
    return run_closed_loop(SimConfig())
