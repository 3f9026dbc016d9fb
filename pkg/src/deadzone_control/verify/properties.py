"""Numerical verification of the closed-loop properties."""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from deadzone_control.core.controller import AdaptFn, ControllerGains, adapt
from deadzone_control.core.deadzone import DeadZoneParams, apply, residual, residual_bound
from deadzone_control.core.errors import ContractError, CoverageError, DivergenceError, DomainError
from deadzone_control.core.fuzzy import FuzzyPartition, basis_matrix, infer
from deadzone_control.export.timeseries import render_timeseries
from deadzone_control.plants.harmonic import HarmonicPlant
from deadzone_control.sim.integrator import integrate
from deadzone_control.sim.metrics import Trajectory, compute_metrics, epsilon_convergence
from deadzone_control.sim.runner import SimConfig, SimRecord, run_closed_loop, run_unforced
from deadzone_control.verify.oracle import (
    fit_rule_outputs,
    increase_budget,
    lyapunov_series,
    max_window_increase,
    power_balance,
)

logger = logging.getLogger(__name__)

# Fixed seed for the sampled identity checks; simulations use no randomness.
SAMPLE_SEED = 20240611

DISPLACED_STARTS = ((2.0, 0.0), (-1.0, 1.0))
IDENTIFICATION_GRID = (-1.0, -0.6, 0.6, 1.0)
IDENTIFICATION_TOLERANCE = 0.15


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    detail: str
    witness: Dict[str, float] = field(default_factory=dict)

    def format_witness(self) -> str:
        return ", ".join(f"{k}={v:.6g}" for k, v in self.witness.items())


class VerificationSuite:
    """
    Runs the property checks against one simulation configuration.

    The adaptation function and the partition can be replaced to check that
    the suite detects a broken update law or a partition with gaps.
    """

    def __init__(
        self,
        sim_config: Optional[SimConfig] = None,
        adapt_fn: AdaptFn = adapt,
        partition: Optional[FuzzyPartition] = None,
    ):
        self.cfg = sim_config or SimConfig()
        self.adapt_fn = adapt_fn
        self.partition = partition if partition is not None else self.cfg.build_partition()
        self._baseline: Optional[List[SimRecord]] = None
        self._checks: Dict[str, Callable[[], PropertyResult]] = {
            "partition_of_unity": self.check_partition_of_unity,
            "deadzone_identity": self.check_deadzone_identity,
            "residual_bound": self.check_residual_bound,
            "rk4_order": self.check_rk4_order,
            "limit_cycle": self.check_limit_cycle,
            "lyapunov_surrogate": self.check_lyapunov_surrogate,
            "epsilon_convergence": self.check_epsilon_convergence,
            "tracking_convergence": self.check_tracking_convergence,
            "deadzone_identification": self.check_deadzone_identification,
            "adaptation_ablation": self.check_adaptation_ablation,
            "multirate_consistency": self.check_multirate_consistency,
            "determinism": self.check_determinism,
        }

    @property
    def names(self) -> List[str]:
        return list(self._checks)

    def run(self, names: Optional[Sequence[str]] = None) -> List[PropertyResult]:
        """Run the named checks (all by default) in suite order."""
        selected = self.names if names is None else list(names)
        unknown = [name for name in selected if name not in self._checks]
        if unknown:
            raise ContractError(
                f"Unknown properties: {', '.join(unknown)}; available: {', '.join(self.names)}"
            )

        results = []
        for name in self.names:
            if name not in selected:
                continue
            logger.info(f"Checking {name}")
            try:
                result = self._checks[name]()
            except (DivergenceError, CoverageError, DomainError) as e:
                witness = {"t": e.t} if isinstance(e, DivergenceError) else {}
                if isinstance(e, CoverageError):
                    witness = {"u_hat": e.value}
                result = PropertyResult(name, False, f"{type(e).__name__}: {e}", witness)
            results.append(result)
        return results

    # Shared runs

    def _simulate(self, cfg: SimConfig) -> List[SimRecord]:
        return run_closed_loop(cfg, adapt_fn=self.adapt_fn, partition=self.partition)

    def baseline(self) -> List[SimRecord]:
        """Closed-loop run of the configured experiment, computed once."""
        if self._baseline is None:
            self._baseline = self._simulate(self.cfg)
        return self._baseline

    def _deadzone(self) -> DeadZoneParams:
        return DeadZoneParams(m=self.cfg.m, delta_l=self.cfg.delta_l, delta_r=self.cfg.delta_r)

    def _gains(self) -> ControllerGains:
        return ControllerGains(kappa=self.cfg.kappa, phi=self.cfg.phi, b=self.cfg.b, m=self.cfg.m)

    def _windows_fit(self) -> bool:
        return self.cfg.t_end >= 2.0 * self.cfg.metric_window

    # Static checks

    def check_partition_of_unity(self) -> PropertyResult:
        rng = np.random.default_rng(SAMPLE_SEED)
        u_hat = rng.uniform(-2.0, 2.0, 100_000)
        totals = basis_matrix(u_hat, self.partition).sum(axis=1)
        deviation = float(np.max(np.abs(totals - 1.0)))
        passed = deviation <= 1e-12
        return PropertyResult(
            "partition_of_unity",
            passed,
            f"sum of basis functions deviates from 1 by at most {deviation:.3g}",
            {"max_deviation": deviation},
        )

    def check_deadzone_identity(self) -> PropertyResult:
        rng = np.random.default_rng(SAMPLE_SEED)
        worst = 0.0
        worst_ulps = 0.0
        for _ in range(100):
            p = DeadZoneParams(
                m=float(rng.uniform(0.1, 5.0)),
                delta_l=float(-rng.uniform(1e-3, 1.0)),
                delta_r=float(rng.uniform(1e-3, 1.0)),
            )
            u = rng.uniform(-100.0, 100.0, 10_000)
            lhs = apply(u, p)
            rhs = p.m * (u - residual(u, p))
            gap = np.abs(lhs - rhs)
            ulps = gap / np.spacing(np.maximum(np.abs(lhs), np.abs(rhs)))
            worst = max(worst, float(gap.max()))
            worst_ulps = max(worst_ulps, float(ulps.max()))
        return PropertyResult(
            "deadzone_identity",
            worst_ulps <= 1.0,
            f"apply(u) vs m*(u - d(u)) on 10^6 samples: largest gap {worst_ulps:g} ulp",
            {"max_abs_gap": worst, "max_ulps": worst_ulps},
        )

    def check_residual_bound(self) -> PropertyResult:
        p = self._deadzone()
        rng = np.random.default_rng(SAMPLE_SEED)
        u = rng.uniform(-100.0, 100.0, 1_000_000)
        largest = float(np.max(np.abs(residual(u, p))))
        bound = residual_bound(p)
        return PropertyResult(
            "residual_bound",
            largest <= bound,
            f"max |d(u)| = {largest:g} against bound {bound:g}",
            {"max_abs_residual": largest, "bound": bound},
        )

    def check_rk4_order(self) -> PropertyResult:
        plant = HarmonicPlant(self._deadzone())
        x0 = np.array([1.0, 0.0])
        errors = []
        for h in (2e-3, 1e-3):
            steps = int(round(2.0 * math.pi / h))
            end = integrate(plant.rhs, x0, 0.0, 0.0, h, steps)
            errors.append(float(np.max(np.abs(end - plant.exact(x0, steps * h)))))
        ratio = errors[0] / errors[1]
        return PropertyResult(
            "rk4_order",
            12.0 <= ratio <= 20.0,
            f"halving h from 2e-3 to 1e-3 reduces the one-period error by {ratio:.3f}x",
            {"error_h": errors[0], "error_h_half": errors[1], "ratio": ratio},
        )

    def check_limit_cycle(self) -> PropertyResult:
        plant = self.cfg.with_changes(plant="van_der_pol").build_plant()
        t, states = run_unforced(plant, (2.0, 0.0), 60.0, self.cfg.plant_rate)
        previous = float(np.max(np.abs(states[(t >= 40.0) & (t < 50.0), 0])))
        last = float(np.max(np.abs(states[(t >= 50.0) & (t < 60.0), 0])))
        change = abs(last - previous) / previous
        return PropertyResult(
            "limit_cycle",
            change < 0.01,
            f"unforced amplitude {previous:.6f} -> {last:.6f} between consecutive 10 s windows",
            {"amplitude_previous": previous, "amplitude_last": last, "relative_change": change},
        )

    # Closed-loop checks

    def check_lyapunov_surrogate(self) -> PropertyResult:
        gains = self._gains()
        if gains.phi <= 0:
            return PropertyResult(
                "lyapunov_surrogate", False, "surrogate needs phi > 0 (adaptation enabled)"
            )
        traj = Trajectory.from_records(self.baseline())
        if len(traj) == 0:
            return PropertyResult("lyapunov_surrogate", False, "run produced no samples")

        fit = fit_rule_outputs(self.partition, self._deadzone())
        values = lyapunov_series(traj.epsilon, traj.rule_outputs, fit.rule_outputs, gains)
        budget = increase_budget(fit, gains, window=1.0)
        increase, k = max_window_increase(values, self.cfg.control_rate)
        balance = power_balance(traj.epsilon, values, gains.kappa, self.cfg.control_period)

        v0, vt = float(values[0]), float(values[-1])
        passed = vt < v0 and increase <= budget
        witness = {
            "V0": v0,
            "VT": vt,
            "max_increase_1s": increase,
            "budget": budget,
            "fit_error": fit.max_fit_error,
            "dissipated": balance.dissipated,
            "drop": balance.drop,
        }
        if k >= 0:
            witness["increase_at_t"] = float(traj.t[k])
        return PropertyResult(
            "lyapunov_surrogate",
            passed,
            f"V {v0:.4g} -> {vt:.4g}; largest 1 s increase {increase:.4g} (budget {budget:.4g})",
            witness,
        )

    def check_epsilon_convergence(self) -> PropertyResult:
        traj = Trajectory.from_records(self.baseline())
        passed, ratio = epsilon_convergence(traj, self.cfg.t_end)
        return PropertyResult(
            "epsilon_convergence",
            passed,
            f"max |eps| last quarter / first quarter = {ratio:.4g} (limit 0.1)",
            {"ratio": ratio},
        )

    def check_tracking_convergence(self) -> PropertyResult:
        if not self._windows_fit():
            return PropertyResult(
                "tracking_convergence", False, "t_end must cover two metric windows"
            )
        window = self.cfg.metric_window
        witness = {}
        passed = True
        for x0 in DISPLACED_STARTS:
            records = self._simulate(self.cfg.with_changes(x0=x0))
            ratio = compute_metrics(records, self.cfg.t_end, window).tracking_ratio
            witness[f"ratio_from_{x0[0]:g}_{x0[1]:g}"] = ratio
            passed = passed and ratio < 0.1

        at_rest = compute_metrics(self.baseline(), self.cfg.t_end, window).tracking_ratio
        witness["ratio_configured_start"] = at_rest
        return PropertyResult(
            "tracking_convergence",
            passed,
            f"late/early max |x~| from displaced starts below 0.1 "
            f"(configured start: {at_rest:.3g}, reported only)",
            witness,
        )

    def check_deadzone_identification(self) -> PropertyResult:
        records = self.baseline()
        if not records:
            return PropertyResult("deadzone_identification", False, "run produced no samples")
        grid = np.array(IDENTIFICATION_GRID)
        estimate = infer(np.array(records[-1].rule_outputs), basis_matrix(grid, self.partition))
        truth = residual(grid, self._deadzone())

        signs_match = bool(np.all(np.sign(estimate) == np.sign(truth)))
        ends = np.abs(grid) == 1.0
        end_error = float(np.max(np.abs(estimate[ends] - truth[ends])))
        witness = {f"d_hat({u:g})": float(v) for u, v in zip(grid, estimate)}
        witness["error_at_ends"] = end_error
        return PropertyResult(
            "deadzone_identification",
            signs_match and end_error < IDENTIFICATION_TOLERANCE,
            f"signs {'match' if signs_match else 'differ'}; "
            f"|d_hat - d| at +/-1 is {end_error:.4g} (limit {IDENTIFICATION_TOLERANCE})",
            witness,
        )

    def check_adaptation_ablation(self) -> PropertyResult:
        if not self._windows_fit():
            return PropertyResult(
                "adaptation_ablation", False, "t_end must cover two metric windows"
            )
        t_end, window = self.cfg.t_end, self.cfg.metric_window
        adaptive = compute_metrics(self.baseline(), t_end, window).rms_last
        frozen = compute_metrics(
            self._simulate(self.cfg.with_changes(phi=0.0)), t_end, window
        ).rms_last
        ratio = frozen / adaptive if adaptive > 0 else math.inf
        return PropertyResult(
            "adaptation_ablation",
            ratio >= 2.0,
            f"final-window RMS x~ without adaptation is {ratio:.3f}x the adaptive run (need >= 2)",
            {"rms_adaptive": adaptive, "rms_frozen": frozen, "ratio": ratio},
        )

    def check_multirate_consistency(self) -> PropertyResult:
        t_end, window = self.cfg.t_end, self.cfg.metric_window
        split = compute_metrics(self.baseline(), t_end, window).rms_last
        single = compute_metrics(
            self._simulate(self.cfg.with_changes(control_rate=self.cfg.plant_rate)),
            t_end,
            window,
        ).rms_last
        ratio = max(split, single) / min(split, single) if min(split, single) > 0 else math.inf
        return PropertyResult(
            "multirate_consistency",
            ratio < 2.0,
            f"final-window RMS x~ {split:.4g} (split rates) vs {single:.4g} (single rate)",
            {"rms_split": split, "rms_single": single, "ratio": ratio},
        )

    def check_determinism(self) -> PropertyResult:
        first = self.baseline()
        second = self._simulate(self.cfg)
        same_records = first == second
        log_dhat = self.cfg.log_dhat
        same_bytes = render_timeseries(first, log_dhat) == render_timeseries(second, log_dhat)
        return PropertyResult(
            "determinism",
            same_records and same_bytes,
            "repeated runs give identical records and CSV bytes"
            if same_records and same_bytes
            else "repeated runs differ",
            {"records": float(len(first))},
        )
