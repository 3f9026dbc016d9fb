"""Tests for the dead-zone model."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deadzone_control.core.deadzone import DeadZoneParams, apply, residual, residual_bound
from deadzone_control.core.errors import ContractError, DomainError

finite_u = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
params = st.builds(
    DeadZoneParams,
    m=st.floats(min_value=0.01, max_value=10.0),
    delta_l=st.floats(min_value=-5.0, max_value=-1e-3),
    delta_r=st.floats(min_value=1e-3, max_value=5.0),
)


@pytest.mark.parametrize(
    "u, m, expected",
    [(0.0, 1.0, 0.0), (0.3, 1.0, 0.0), (1.0, 1.0, 0.7), (-1.0, 2.0, -1.2)],
)
def test_apply_examples(u, m, expected):
    p = DeadZoneParams(m=m, delta_l=-0.4, delta_r=0.3)
    assert apply(u, p) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("u, expected", [(0.0, 0.0), (0.5, 0.3), (-2.0, -0.4)])
def test_residual_examples(deadzone, u, expected):
    assert residual(u, deadzone) == expected


@pytest.mark.parametrize(
    "delta_l, delta_r, expected", [(-0.4, 0.3, 0.4), (-0.1, 0.1, 0.1), (-0.05, 0.5, 0.5)]
)
def test_residual_bound_examples(delta_l, delta_r, expected):
    assert residual_bound(DeadZoneParams(1.0, delta_l, delta_r)) == expected


def test_boundaries_take_outer_branches(deadzone):
    assert residual(-0.4, deadzone) == -0.4
    assert residual(0.3, deadzone) == 0.3
    assert apply(-0.4, deadzone) == 0.0
    assert apply(0.3, deadzone) == 0.0


@pytest.mark.parametrize(
    "m, delta_l, delta_r",
    [(0.0, -0.4, 0.3), (-1.0, -0.4, 0.3), (1.0, 0.1, 0.3), (1.0, -0.4, 0.0), (math.nan, -0.4, 0.3)],
)
def test_invalid_params_rejected(m, delta_l, delta_r):
    with pytest.raises(ContractError):
        DeadZoneParams(m=m, delta_l=delta_l, delta_r=delta_r)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_input_is_domain_error(deadzone, bad):
    with pytest.raises(DomainError):
        apply(bad, deadzone)
    with pytest.raises(DomainError):
        residual(np.array([0.0, bad]), deadzone)


def test_scalar_input_returns_float(deadzone):
    assert isinstance(apply(1.0, deadzone), float)
    assert isinstance(residual(np.float64(0.1), deadzone), float)


def test_array_matches_scalar(deadzone):
    u = np.linspace(-2.0, 2.0, 401)
    assert np.array_equal(apply(u, deadzone), [apply(float(v), deadzone) for v in u])
    assert np.array_equal(residual(u, deadzone), [residual(float(v), deadzone) for v in u])


@given(finite_u, params)
def test_decomposition_identity(u, p):
    assert apply(u, p) == p.m * (u - residual(u, p))


@given(finite_u, params)
def test_residual_within_bound(u, p):
    assert abs(residual(u, p)) <= residual_bound(p)


@given(params)
def test_monotone_and_zero_on_band(p):
    u = np.linspace(p.delta_l - 3.0, p.delta_r + 3.0, 2001)
    out = apply(u, p)
    assert np.all(np.diff(out) >= 0.0)
    band = (u >= p.delta_l) & (u <= p.delta_r)
    assert np.all(out[band] == 0.0)
    assert np.all(out[~band] != 0.0)


def test_continuous_at_band_edges(deadzone):
    for edge in (deadzone.delta_l, deadzone.delta_r):
        left = apply(np.nextafter(edge, -np.inf), deadzone)
        right = apply(np.nextafter(edge, np.inf), deadzone)
        assert abs(left - right) < 1e-15
