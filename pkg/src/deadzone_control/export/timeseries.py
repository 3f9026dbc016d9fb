"""``timeseries.csv``: one row per control sample, 17 significant digits."""

import csv
import io
from pathlib import Path
from typing import List, Sequence

from deadzone_control.core.errors import ContractError
from deadzone_control.sim.runner import SimRecord

BASE_COLUMNS = ("t", "x", "xdot", "xd", "xddot", "u", "upsilon", "uhat", "epsilon", "dhat", "dtrue")


def header(log_dhat: bool = False, rules: int = 7) -> List[str]:
    columns = list(BASE_COLUMNS)
    if log_dhat:
        columns.extend(f"Dhat_{r}" for r in range(1, rules + 1))
    return columns


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _row(record: SimRecord, log_dhat: bool) -> List[str]:
    if len(record.state) != 2:
        raise ContractError(f"CSV layout covers second-order plants, got order {len(record.state)}")
    values = [
        record.t,
        record.state[0],
        record.state[1],
        record.x_d[0],
        record.x_d[1],
        record.u,
        record.upsilon,
        record.u_hat,
        record.epsilon,
        record.d_hat,
        record.d_true,
    ]
    if log_dhat:
        values.extend(record.rule_outputs)
    return [_fmt(v) for v in values]


def render_timeseries(records: Sequence[SimRecord], log_dhat: bool = False, rules: int = 7) -> str:
    """CSV text for ``records``; the header is written even when there are none."""
    if records and log_dhat:
        rules = len(records[0].rule_outputs)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header(log_dhat, rules))
    for record in records:
        writer.writerow(_row(record, log_dhat))
    return buffer.getvalue()


def write_timeseries(
    path: Path, records: Sequence[SimRecord], log_dhat: bool = False, rules: int = 7
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_timeseries(records, log_dhat, rules), encoding="utf-8")
    return path


def parse_timeseries(text: str) -> List[SimRecord]:
    """
    Rebuild records from CSV text.

    ``x_tilde`` is recomputed as ``state - x_d``; ``rule_outputs`` is empty
    unless the ``Dhat_r`` columns are present.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        columns = next(reader)
    except StopIteration:
        raise ContractError("Empty timeseries file")
    if tuple(columns[: len(BASE_COLUMNS)]) != BASE_COLUMNS:
        raise ContractError(f"Unexpected timeseries header: {','.join(columns)}")
    rules = len(columns) - len(BASE_COLUMNS)

    records = []
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(columns):
            raise ContractError(f"Line {lineno}: expected {len(columns)} fields, got {len(row)}")
        v = [float(item) for item in row]
        state = (v[1], v[2])
        x_d = (v[3], v[4])
        records.append(
            SimRecord(
                t=v[0],
                state=state,
                x_d=x_d,
                x_tilde=(state[0] - x_d[0], state[1] - x_d[1]),
                epsilon=v[8],
                u_hat=v[7],
                u=v[5],
                upsilon=v[6],
                d_true=v[10],
                d_hat=v[9],
                rule_outputs=tuple(v[len(BASE_COLUMNS):]) if rules else (),
            )
        )
    return records


def read_timeseries(path: Path) -> List[SimRecord]:
    return parse_timeseries(Path(path).read_text(encoding="utf-8"))
