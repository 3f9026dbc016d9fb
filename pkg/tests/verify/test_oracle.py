"""Tests for the least-squares oracle and the Lyapunov surrogate."""

import math

import numpy as np
import pytest

from deadzone_control.core.controller import ControllerGains
from deadzone_control.core.errors import ContractError
from deadzone_control.core.fuzzy import basis_matrix, partition_from_centers
from deadzone_control.verify.oracle import (
    fit_rule_outputs,
    increase_budget,
    lyapunov_series,
    max_window_increase,
    power_balance,
)

GAINS = ControllerGains(kappa=10.0, phi=3.0, b=1.0, m=1.0)


def test_fit_reproduces_the_band_edges(partition, deadzone):
    fit = fit_rule_outputs(partition, deadzone)
    assert fit.grid.shape == (4001,)
    assert fit.rule_outputs.shape == (7,)
    # The shoulders see only the saturated residual.
    assert fit.rule_outputs[0] == pytest.approx(-0.4, abs=0.05)
    assert fit.rule_outputs[-1] == pytest.approx(0.3, abs=0.05)
    assert np.allclose(basis_matrix(fit.grid, partition) @ fit.rule_outputs, fit.fitted)
    assert 0.0 < fit.max_fit_error < 0.2
    assert fit.e_max > 0.65


def test_fit_is_exact_for_representable_target(deadzone):
    """Centers on the band edges make the residual exactly representable."""
    part = partition_from_centers((-0.4, 0.3))
    fit = fit_rule_outputs(part, deadzone)
    assert fit.max_fit_error < 1e-10
    assert fit.rule_outputs == pytest.approx([-0.4, 0.3])


def test_increase_budget_formula(partition, deadzone):
    fit = fit_rule_outputs(partition, deadzone)
    budget = increase_budget(fit, GAINS, window=1.0)
    assert budget == pytest.approx(fit.e_max**2 / 40.0)
    assert increase_budget(fit, GAINS, window=2.0) == pytest.approx(2.0 * budget)


def test_lyapunov_series():
    epsilon = np.array([1.0, 0.0])
    history = np.array([[0.0, 0.0], [1.0, 1.0]])
    values = lyapunov_series(epsilon, history, np.array([1.0, 1.0]), GAINS)
    assert values == pytest.approx([0.5 + 2.0 / 6.0, 0.0])


def test_lyapunov_series_rejects_frozen_adaptation():
    gains = ControllerGains(kappa=10.0, phi=0.0, b=1.0, m=1.0)
    with pytest.raises(ContractError):
        lyapunov_series(np.zeros(2), np.zeros((2, 3)), np.zeros(3), gains)


def test_lyapunov_series_shape_mismatch():
    with pytest.raises(ContractError):
        lyapunov_series(np.zeros(3), np.zeros((2, 3)), np.zeros(3), GAINS)


def test_max_window_increase():
    values = np.array([5.0, 4.0, 5.5, 3.0, 3.8, 1.0])
    increase, k = max_window_increase(values, 2)
    assert increase == pytest.approx(0.5)
    assert k == 0
    assert max_window_increase(values, 10) == (-math.inf, -1)


def test_power_balance():
    balance = power_balance(np.array([1.0, 1.0]), np.array([2.0, 0.5]), kappa=10.0, dt=0.1)
    assert balance.dissipated == pytest.approx(2.0)
    assert balance.drop == pytest.approx(1.5)
    assert balance.mismatch == pytest.approx(0.5)
