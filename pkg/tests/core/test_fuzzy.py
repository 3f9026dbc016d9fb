"""Tests for the fuzzy partition and TSK inference."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deadzone_control.core.errors import ContractError, CoverageError, DomainError
from deadzone_control.core.fuzzy import (
    DEFAULT_CENTERS,
    FuzzyPartition,
    MembershipFunction,
    basis,
    basis_matrix,
    default_partition,
    firing_strengths,
    infer,
    mu_trap,
    mu_tri,
    partition_from_centers,
    zero_rule_outputs,
)


@pytest.mark.parametrize(
    "u, expected",
    [(0.0, 1.0), (-0.05, 0.0), (0.025, 0.5), (0.2, 0.0)],
)
def test_mu_tri(u, expected):
    assert mu_tri(u, -0.05, 0.0, 0.05) == pytest.approx(expected)


@pytest.mark.parametrize("u, expected", [(0.5, 1.0), (0.0, 0.0), (0.3, 1.0), (0.75, 0.5)])
def test_mu_trap(u, expected):
    assert mu_trap(u, 0.0, 0.25, 0.5, 1.0) == pytest.approx(expected)


@pytest.mark.parametrize("corners", [(0.0, 0.0, 1.0), (0.0, 1.0, 1.0), (1.0, 0.5, 2.0)])
def test_degenerate_triangle_rejected(corners):
    with pytest.raises(ContractError):
        mu_tri(0.0, *corners)
    with pytest.raises(ContractError):
        MembershipFunction.triangle(*corners)


def test_degenerate_trapezoid_rejected():
    with pytest.raises(ContractError):
        mu_trap(0.0, 0.0, 0.0, 0.5, 1.0)
    with pytest.raises(ContractError):
        MembershipFunction.trapezoid(0.0, 0.5, 0.4, 1.0)


def test_shoulders_saturate():
    left = MembershipFunction.left_shoulder(-0.5, -0.1)
    right = MembershipFunction.right_shoulder(0.1, 0.5)
    assert left(-10.0) == 1.0 and left(0.0) == 0.0
    assert right(10.0) == 1.0 and right(0.0) == 0.0
    assert left(-0.3) == pytest.approx(0.5)
    assert right.modal_point == 0.5 and left.modal_point == -0.5


def test_default_partition_layout(partition):
    assert partition.size == 7
    assert partition.centers == DEFAULT_CENTERS
    assert partition.members[0].kind == "left_shoulder"
    assert partition.members[-1].kind == "right_shoulder"
    assert [m.modal_point for m in partition.members] == list(DEFAULT_CENTERS)


def test_basis_one_hot_at_centers(partition):
    for r, c in enumerate(DEFAULT_CENTERS):
        psi = basis(c, partition)
        assert psi[r] == 1.0
        assert np.count_nonzero(psi) == 1


def test_basis_between_centers(partition):
    psi = partition.basis(0.3)
    # Halfway between 0.1 and 0.5.
    assert psi[5] == pytest.approx(0.5)
    assert psi[6] == pytest.approx(0.5)


def test_partition_of_unity_dense_grid(partition):
    u = np.random.default_rng(7).uniform(-2.0, 2.0, 100_000)
    totals = basis_matrix(u, partition).sum(axis=1)
    assert np.max(np.abs(totals - 1.0)) <= 1e-12


@given(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False))
def test_basis_is_convex_combination(u):
    psi = default_partition().basis(u)
    assert np.all(psi >= 0.0)
    assert abs(psi.sum() - 1.0) <= 1e-12
    assert np.count_nonzero(psi) <= 2


def test_firing_strengths_shapes(partition):
    assert firing_strengths(0.0, partition).shape == (7,)
    assert firing_strengths(np.zeros(5), partition).shape == (5, 7)
    assert basis_matrix(0.0, partition).shape == (1, 7)


def test_non_finite_u_hat(partition):
    with pytest.raises(DomainError):
        partition.basis(np.nan)


def test_gap_raises_coverage_error():
    gapped = FuzzyPartition(
        (MembershipFunction.triangle(-1.0, -0.5, 0.0), MembershipFunction.triangle(0.5, 1.0, 1.5)),
        (-0.5, 1.0),
    )
    with pytest.raises(CoverageError) as excinfo:
        gapped.basis(0.25)
    assert excinfo.value.value == 0.25
    with pytest.raises(CoverageError):
        gapped.check_coverage(-0.5, 1.0)


def test_infer():
    psi = np.array([0.0, 0.25, 0.75])
    assert infer(np.array([1.0, 2.0, 4.0]), psi) == pytest.approx(3.5)
    rows = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.allclose(infer(np.array([1.0, 2.0, 4.0]), rows), [1.0, 4.0])
    with pytest.raises(ContractError):
        infer(np.zeros(2), psi)


def test_infer_of_zero_outputs_is_zero(partition):
    assert infer(zero_rule_outputs(partition), partition.basis(0.07)) == 0.0


@pytest.mark.parametrize("centers", [(0.0,), (0.0, 0.0, 1.0), (1.0, 0.0)])
def test_invalid_centers(centers):
    with pytest.raises(ContractError):
        partition_from_centers(centers)


def test_partition_from_two_centers():
    part = partition_from_centers((-1.0, 1.0))
    assert part.size == 2
    assert np.allclose(part.basis(0.0), [0.5, 0.5])


u_hats = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)
rule_values = st.lists(
    st.floats(min_value=-10.0, max_value=10.0, allow_nan=False), min_size=7, max_size=7
)


@given(u_hats, st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_constant_rule_outputs_are_reproduced(u, k):
    psi = default_partition().basis(u)
    assert infer(np.full(7, k), psi) == pytest.approx(k, rel=1e-12, abs=1e-12)


@given(u_hats, rule_values)
def test_inference_stays_within_rule_outputs(u, values):
    rule_outputs = np.array(values)
    d_hat = infer(rule_outputs, default_partition().basis(u))
    assert rule_outputs.min() - 1e-12 <= d_hat <= rule_outputs.max() + 1e-12


@given(rule_values)
def test_inference_interpolates_at_centers(values):
    part = default_partition()
    rule_outputs = np.array(values)
    for r, c in enumerate(DEFAULT_CENTERS):
        assert infer(rule_outputs, part.basis(c)) == pytest.approx(rule_outputs[r])


@pytest.mark.parametrize(
    "u, expected",
    [
        (0.025, [0.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0]),
        (10.0, [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
        (-10.0, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ],
)
def test_default_partition_examples(partition, u, expected):
    assert partition.basis(u) == pytest.approx(expected)


def test_infer_example():
    rule_outputs = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7])
    psi = np.array([0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0])
    assert infer(rule_outputs, psi) == pytest.approx(0.15)
