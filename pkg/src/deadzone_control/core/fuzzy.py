"""Zero-order TSK inference over a one-dimensional fuzzy partition.

Rules have the form ``if u_hat is U_r then d_hat = D_r``.  The output is the
normalised weighted average ``d_hat = D^T Psi(u_hat)`` with
``Psi_r = w_r / sum(w)``.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import ContractError, CoverageError, DomainError

ArrayLike = Union[float, np.ndarray]

DEFAULT_CENTERS: Tuple[float, ...] = (-0.5, -0.1, -0.05, 0.0, 0.05, 0.1, 0.5)

TRIANGLE = "triangle"
TRAPEZOID = "trapezoid"
LEFT_SHOULDER = "left_shoulder"
RIGHT_SHOULDER = "right_shoulder"


def _scalar_or_array(value: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else value


def mu_tri(u: ArrayLike, a: float, b: float, c: float) -> ArrayLike:
    """Triangular membership with corners ``a < b < c``."""
    if not a < b < c:
        raise ContractError(f"Triangle corners must satisfy a < b < c, got {(a, b, c)}")
    x = np.asarray(u, dtype=float)
    value = np.maximum(np.minimum((x - a) / (b - a), (c - x) / (c - b)), 0.0)
    return _scalar_or_array(value, u)


def mu_trap(u: ArrayLike, a: float, b: float, c: float, d: float) -> ArrayLike:
    """Trapezoidal membership with corners ``a < b <= c < d``."""
    if not (a < b <= c < d):
        raise ContractError(
            f"Trapezoid corners must satisfy a < b <= c < d, got {(a, b, c, d)}"
        )
    x = np.asarray(u, dtype=float)
    value = np.maximum(
        np.minimum(np.minimum((x - a) / (b - a), 1.0), (d - x) / (d - c)), 0.0
    )
    return _scalar_or_array(value, u)


@dataclass(frozen=True)
class MembershipFunction:
    """One antecedent set.

    ``corners`` holds ``(a, b, c)`` for triangles, ``(a, b, c, d)`` for
    trapezoids, ``(c, d)`` for a left shoulder (1 for u <= c, 0 from d on)
    and ``(a, b)`` for a right shoulder (0 up to a, 1 from b on).
    """

    kind: str
    corners: Tuple[float, ...]

    def __post_init__(self):
        expected = {TRIANGLE: 3, TRAPEZOID: 4, LEFT_SHOULDER: 2, RIGHT_SHOULDER: 2}
        if self.kind not in expected:
            raise ContractError(f"Unknown membership shape: {self.kind}")
        if len(self.corners) != expected[self.kind]:
            raise ContractError(
                f"{self.kind} needs {expected[self.kind]} corners, got {len(self.corners)}"
            )
        if not all(math.isfinite(x) for x in self.corners):
            raise ContractError(f"Membership corners must be finite: {self.corners}")

        ordered = all(x < y for x, y in zip(self.corners, self.corners[1:]))
        if self.kind == TRAPEZOID:
            a, b, c, d = self.corners
            ordered = a < b <= c < d
        if not ordered:
            raise ContractError(f"Degenerate {self.kind} corners: {self.corners}")

    @classmethod
    def triangle(cls, a: float, b: float, c: float) -> "MembershipFunction":
        return cls(TRIANGLE, (float(a), float(b), float(c)))

    @classmethod
    def trapezoid(cls, a: float, b: float, c: float, d: float) -> "MembershipFunction":
        return cls(TRAPEZOID, (float(a), float(b), float(c), float(d)))

    @classmethod
    def left_shoulder(cls, c: float, d: float) -> "MembershipFunction":
        return cls(LEFT_SHOULDER, (float(c), float(d)))

    @classmethod
    def right_shoulder(cls, a: float, b: float) -> "MembershipFunction":
        return cls(RIGHT_SHOULDER, (float(a), float(b)))

    @property
    def modal_point(self) -> float:
        if self.kind == TRIANGLE:
            return self.corners[1]
        if self.kind == TRAPEZOID:
            return 0.5 * (self.corners[1] + self.corners[2])
        if self.kind == LEFT_SHOULDER:
            return self.corners[0]
        return self.corners[1]

    def ramps(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """Rising ``(a, b)`` and falling ``(c, d)`` edges; ``None`` for open sides."""
        if self.kind == TRIANGLE:
            a, b, c = self.corners
            return (a, b), (b, c)
        if self.kind == TRAPEZOID:
            a, b, c, d = self.corners
            return (a, b), (c, d)
        if self.kind == LEFT_SHOULDER:
            return None, self.corners
        return self.corners, None

    def __call__(self, u: ArrayLike) -> ArrayLike:
        if self.kind == TRIANGLE:
            return mu_tri(u, *self.corners)
        if self.kind == TRAPEZOID:
            return mu_trap(u, *self.corners)

        x = np.asarray(u, dtype=float)
        if self.kind == LEFT_SHOULDER:
            c, d = self.corners
            value = np.maximum(np.minimum(1.0, (d - x) / (d - c)), 0.0)
        else:
            a, b = self.corners
            value = np.maximum(np.minimum((x - a) / (b - a), 1.0), 0.0)
        return _scalar_or_array(value, u)


@dataclass(frozen=True)
class FuzzyPartition:
    """Ordered membership functions over the ``u_hat`` universe."""

    members: Tuple[MembershipFunction, ...]
    centers: Tuple[float, ...]
    _rise_a: np.ndarray = field(init=False, repr=False, compare=False)
    _rise_w: np.ndarray = field(init=False, repr=False, compare=False)
    _rise_open: np.ndarray = field(init=False, repr=False, compare=False)
    _fall_d: np.ndarray = field(init=False, repr=False, compare=False)
    _fall_w: np.ndarray = field(init=False, repr=False, compare=False)
    _fall_open: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "centers", tuple(float(c) for c in self.centers))

        if len(self.members) < 2:
            raise ContractError("A partition needs at least two membership functions")
        if len(self.centers) != len(self.members):
            raise ContractError(
                f"Got {len(self.centers)} centers for {len(self.members)} members"
            )
        if not all(x < y for x, y in zip(self.centers, self.centers[1:])):
            raise ContractError(f"Centers must be strictly increasing: {self.centers}")

        rise_a, rise_w, rise_open = [], [], []
        fall_d, fall_w, fall_open = [], [], []
        for member in self.members:
            rise, fall = member.ramps()
            rise_open.append(rise is None)
            a, b = rise if rise is not None else (0.0, 1.0)
            rise_a.append(a)
            rise_w.append(b - a)
            fall_open.append(fall is None)
            c, d = fall if fall is not None else (0.0, 1.0)
            fall_d.append(d)
            fall_w.append(d - c)

        object.__setattr__(self, "_rise_a", np.array(rise_a))
        object.__setattr__(self, "_rise_w", np.array(rise_w))
        object.__setattr__(self, "_rise_open", np.array(rise_open))
        object.__setattr__(self, "_fall_d", np.array(fall_d))
        object.__setattr__(self, "_fall_w", np.array(fall_w))
        object.__setattr__(self, "_fall_open", np.array(fall_open))

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def firing_strengths(self, u_hat: ArrayLike) -> np.ndarray:
        """Membership of ``u_hat`` in every rule; shape ``(N,)`` or ``(M, N)``."""
        x = np.asarray(u_hat, dtype=float)
        if not np.all(np.isfinite(x)):
            raise DomainError(f"u_hat must be finite, got {u_hat!r}")

        col = x[..., None]
        rise = np.where(self._rise_open, 1.0, (col - self._rise_a) / self._rise_w)
        fall = np.where(self._fall_open, 1.0, (self._fall_d - col) / self._fall_w)
        return np.maximum(np.minimum(np.minimum(rise, 1.0), fall), 0.0)

    def basis(self, u_hat: ArrayLike) -> np.ndarray:
        """Normalised firing strengths ``Psi``; rows sum to one."""
        w = self.firing_strengths(u_hat)
        total = w.sum(axis=-1, keepdims=True)
        if np.any(total <= 0.0):
            flat = np.atleast_1d(np.asarray(u_hat, dtype=float))
            uncovered = flat[np.atleast_1d(total[..., 0] <= 0.0)]
            raise CoverageError(float(uncovered[0]))
        return w / total

    def check_coverage(self, lo: float, hi: float, samples: int = 10_001) -> None:
        """Raise :class:`CoverageError` if some point of ``[lo, hi]`` is uncovered."""
        self.basis(np.linspace(lo, hi, samples))


def firing_strengths(u_hat: ArrayLike, part: FuzzyPartition) -> np.ndarray:
    return part.firing_strengths(u_hat)


def basis(u_hat: ArrayLike, part: FuzzyPartition) -> np.ndarray:
    return part.basis(u_hat)


def basis_matrix(u_hat: np.ndarray, part: FuzzyPartition) -> np.ndarray:
    """Basis rows for a grid of inputs, shape ``(M, N)``."""
    return part.basis(np.atleast_1d(np.asarray(u_hat, dtype=float)))


def infer(rule_outputs: np.ndarray, psi: np.ndarray) -> ArrayLike:
    """TSK output ``D^T Psi``; returns a float for a single basis vector."""
    rule_outputs = np.asarray(rule_outputs, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if rule_outputs.ndim != 1 or psi.shape[-1] != rule_outputs.shape[0]:
        raise ContractError(
            f"Rule outputs of length {rule_outputs.shape} do not match basis {psi.shape}"
        )
    if psi.ndim == 1:
        return float(np.dot(rule_outputs, psi))
    return psi @ rule_outputs


def zero_rule_outputs(part: FuzzyPartition) -> np.ndarray:
    """Initial rule outputs, all zero."""
    return np.zeros(part.size)


def check_rule_outputs(rule_outputs: np.ndarray, part: FuzzyPartition) -> np.ndarray:
    rule_outputs = np.asarray(rule_outputs, dtype=float)
    if rule_outputs.shape != (part.size,):
        raise ContractError(
            f"Expected {part.size} rule outputs, got shape {rule_outputs.shape}"
        )
    if not np.all(np.isfinite(rule_outputs)):
        raise DomainError("Rule outputs must be finite")
    return rule_outputs


def partition_from_centers(centers: Sequence[float]) -> FuzzyPartition:
    """Triangles with feet at neighbouring centers, shoulders at both ends."""
    centers = tuple(float(c) for c in centers)
    if len(centers) < 2:
        raise ContractError("A partition needs at least two centers")
    if not all(x < y for x, y in zip(centers, centers[1:])):
        raise ContractError(f"Centers must be strictly increasing: {centers}")

    members = [MembershipFunction.left_shoulder(centers[0], centers[1])]
    for left, mid, right in zip(centers, centers[1:], centers[2:]):
        members.append(MembershipFunction.triangle(left, mid, right))
    members.append(MembershipFunction.right_shoulder(centers[-2], centers[-1]))
    return FuzzyPartition(tuple(members), centers)


def default_partition() -> FuzzyPartition:
    """Seven-rule partition used in the Van der Pol experiment."""
    return partition_from_centers(DEFAULT_CENTERS)
