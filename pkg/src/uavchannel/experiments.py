"""Parameter sweeps producing the tables behind each figure.

Row order is the cross product of the inputs with the outer (first-listed)
parameter varying slowest.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from . import channel_model as cm

# default sweep scenarios
LATENCY_TS = (10, 100, 1000, 10000, 100000)
LATENCY_RATE_BPS = 1.54e6
FIG3_RATES_BPS = (1.54e6, 6e6, 10e6, 45e6)
UTIL_TS = (10, 100, 1000, 10000, 100000)
UTIL_USERS = (1, 3, 5)
UTIL_RATE_BPS = 1.54e6
RATE_SWEEP_TS = 100000
RATE_SWEEP_USERS = 5
RATE_SWEEP_RATES_BPS = (1.544e6, 2.048e6, 4e6, 6e6, 10e6, 34e6, 45e6)
BER_SWEEP_TS = 10000
BER_SWEEP_USERS = 5
BER_SWEEP_RATE_BPS = 45e6
BER_SWEEP_VALUES = (0.0, 0.01, 0.02, 0.03, 0.04, 0.05)


def format_number(x) -> str:
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


@dataclass(frozen=True)
class SweepTable:
    title: str
    column_names: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "column_names", tuple(self.column_names))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        width = len(self.column_names)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(f"row {row} has {len(row)} values, expected {width}")
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"row {row} has a non-finite value")

    def column(self, name: str) -> list:
        i = self.column_names.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.column_names)]
        lines += [",".join(format_number(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"title": self.title, "columns": list(self.column_names), "rows": [list(r) for r in self.rows]}
        return json.dumps(doc, indent=2) + "\n"


def _require(name: str, values: Sequence) -> None:
    if len(values) == 0:
        raise ValueError(f"{name} must not be empty")


def sweep_latency(
    ts_list: Sequence[int] = LATENCY_TS,
    rate_bps_list: Sequence[float] = (LATENCY_RATE_BPS,),
    hop_count: int = 3,
) -> SweepTable:
    _require("ts_list", ts_list)
    _require("rate_bps_list", rate_bps_list)
    rows = [
        (float(rate), ts, cm.latency(ts, rate, hop_count))
        for rate, ts in product(rate_bps_list, ts_list)
    ]
    return SweepTable(
        "Latency vs transaction size", ("data_rate_bps", "ts_bits", "latency_ms"), rows
    )


def sweep_utilization_ts(
    ts_list: Sequence[int] = UTIL_TS,
    users_list: Sequence[int] = UTIL_USERS,
    rate_bps: float = UTIL_RATE_BPS,
    window_s: float = 1.0,
) -> SweepTable:
    _require("ts_list", ts_list)
    _require("users_list", users_list)
    rows = [
        (users, ts, cm.utilization(ts, users, rate_bps, window_s))
        for users, ts in product(users_list, ts_list)
    ]
    return SweepTable(
        "Utilization vs transaction size and users", ("num_users", "ts_bits", "utilization_pct"), rows
    )


def sweep_utilization_rate(
    ts_bits: int = RATE_SWEEP_TS,
    num_users: int = RATE_SWEEP_USERS,
    rate_bps_list: Sequence[float] = RATE_SWEEP_RATES_BPS,
    window_s: float = 1.0,
) -> SweepTable:
    _require("rate_bps_list", rate_bps_list)
    rows = [(float(rate), cm.utilization(ts_bits, num_users, rate, window_s)) for rate in rate_bps_list]
    return SweepTable("Utilization vs data rate", ("data_rate_bps", "utilization_pct"), rows)


def sweep_utilization_ber(
    ts_bits: int = BER_SWEEP_TS,
    num_users: int = BER_SWEEP_USERS,
    rate_bps: float = BER_SWEEP_RATE_BPS,
    ber_list: Sequence[float] = BER_SWEEP_VALUES,
    window_s: float = 1.0,
) -> SweepTable:
    _require("ber_list", ber_list)
    rows = [
        (float(ber), cm.utilization_ber(ts_bits, num_users, rate_bps, ber, window_s))
        for ber in ber_list
    ]
    return SweepTable("Utilization vs bit error rate", ("ber", "utilization_pct"), rows)
