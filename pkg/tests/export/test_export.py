"""Tests for the CSV, manifest and sweep writers."""

import math
from datetime import datetime

import pytest

from deadzone_control.core.config import CONFIG_SCHEMA, Config
from deadzone_control.core.errors import ConfigError, ContractError
from deadzone_control.export.manifest import (
    RunManifest,
    manifest_config,
    read_manifest,
    summarize_run,
)
from deadzone_control.export.sweep import SweepRow, render_sweep, run_sweep, write_sweep
from deadzone_control.export.timeseries import (
    header,
    parse_timeseries,
    read_timeseries,
    render_timeseries,
    write_timeseries,
)
from deadzone_control.sim.runner import SimConfig, run_closed_loop

HEADER = "t,x,xdot,xd,xddot,u,upsilon,uhat,epsilon,dhat,dtrue"


@pytest.fixture(scope="module")
def short_records():
    return run_closed_loop(SimConfig(t_end=1.0))


def test_header_layout():
    assert ",".join(header()) == HEADER
    assert header(log_dhat=True)[-7:] == [f"Dhat_{r}" for r in range(1, 8)]


def test_empty_run_writes_header_only():
    assert render_timeseries([]) == HEADER + "\n"
    assert parse_timeseries(HEADER + "\n") == []


def test_round_trip_with_rule_outputs(short_records, test_env):
    path = write_timeseries(
        test_env["result_outputs"] / "timeseries_round_trip.csv", short_records, log_dhat=True
    )
    assert read_timeseries(path) == short_records


def test_round_trip_without_rule_outputs(short_records):
    parsed = parse_timeseries(render_timeseries(short_records))
    assert len(parsed) == len(short_records)
    for original, again in zip(short_records, parsed):
        assert again.state == original.state
        assert again.u == original.u
        assert again.d_true == original.d_true
        assert again.rule_outputs == ()


def test_values_use_17_significant_digits(short_records):
    row = render_timeseries(short_records[1:2]).splitlines()[1]
    t = row.split(",")[0]
    assert float(t) == short_records[1].t
    assert t == f"{short_records[1].t:.17g}"


def test_bad_header_rejected():
    with pytest.raises(ContractError):
        parse_timeseries("time,x\n0,1\n")
    with pytest.raises(ContractError):
        parse_timeseries("")


def test_manifest_lists_every_key(short_records, test_env):
    cfg = SimConfig(t_end=1.0)
    manifest = RunManifest(
        config=cfg.to_config(),
        started_at=datetime(2024, 1, 1, 12, 0, 0),
        finished_at=datetime(2024, 1, 1, 12, 0, 1),
        paths={"timeseries": test_env["result_outputs"] / "timeseries.csv"},
        metrics=summarize_run(short_records, cfg),
    )
    path = manifest.write(test_env["result_outputs"] / "manifest.txt")
    entries = read_manifest(path)

    for key in CONFIG_SCHEMA:
        assert key in entries
    assert entries["started_at"] == "2024-01-01T12:00:00"
    assert entries["path.timeseries"].endswith("timeseries.csv")
    assert entries["metric.samples"] == "500"
    assert float(entries["metric.final_v_surrogate"]) >= 0.0
    assert manifest_config(entries) == cfg.to_config()


def test_summary_without_adaptation(short_records):
    summary = summarize_run(short_records, SimConfig(t_end=1.0, phi=0.0))
    assert summary["final_v_surrogate"] == "n/a"
    assert summary["max_abs_u"] > 0.0


def test_summary_of_empty_run():
    summary = summarize_run([], SimConfig(t_end=0.0))
    assert summary["samples"] == 0
    assert math.isnan(summary["rms_xtilde_last"])


def test_render_sweep():
    rows = [SweepRow(1.0, 0.5, 2.0, "pass"), SweepRow(10.0, math.nan, math.nan, "diverged")]
    lines = render_sweep("kappa", rows).splitlines()
    assert lines[0] == "kappa,rms_xtilde_final,max_abs_u,epsilon_convergence"
    assert lines[1] == "1,0.5,2,pass"
    assert lines[2] == "10,nan,nan,diverged"
    assert render_sweep("phi", []) == "phi,rms_xtilde_final,max_abs_u,epsilon_convergence\n"


def test_run_sweep_rows_follow_values(test_env):
    config = Config({"t_end": "4", "metric_window": "1"})
    rows = run_sweep(config, "kappa", [5.0, 20.0])
    assert [row.value for row in rows] == [5.0, 20.0]
    assert all(row.status in ("pass", "fail") for row in rows)
    write_sweep(test_env["result_outputs"] / "sweep_kappa.csv", "kappa", rows)


def test_parallel_sweep_matches_serial():
    config = Config({"t_end": "1", "metric_window": "0.5"})
    serial = run_sweep(config, "phi", [0.0, 3.0], jobs=1)
    parallel = run_sweep(config, "phi", [0.0, 3.0], jobs=2)
    assert serial == parallel


def test_sweep_rejects_unknown_param():
    with pytest.raises(ConfigError) as excinfo:
        run_sweep(Config(), "t_end", [1.0])
    assert excinfo.value.key == "param"


def test_sweep_value_out_of_range():
    with pytest.raises(ConfigError) as excinfo:
        run_sweep(Config({"t_end": "1"}), "kappa", [-1.0])
    assert excinfo.value.key == "kappa"
