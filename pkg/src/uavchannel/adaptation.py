"""Closed-loop transaction-size controller.

Starting from a regression prediction minus an offset, the transaction size
grows by a small step each time step and is cut by a larger step whenever
latency reaches the target. The run ends after a fixed number of such
threshold events. Time is the integer step index; nothing here sleeps.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, fields

from .errors import ChannelDomainError, NonTerminationError
from .regression import LinearModel, SlopeModel, predict_ts

DEFAULT_MAX_STEPS = 10**6
TRACE_COLUMNS = ("step", "ts_bits", "latency_ms", "threshold_event")


@dataclass(frozen=True)
class AdaptationParams:
    target_latency_ms: float = 2.0
    data_rate_mbps: float = 6.0
    initial_offset_bits: int = 1000
    increase_step_bits: int = 100
    decrease_step_bits: int = 400
    max_threshold_events: int = 3
    min_ts_bits: int = 100
    slope_model: SlopeModel = field(default_factory=SlopeModel)

    def __post_init__(self):
        if not self.target_latency_ms > 0:
            raise ChannelDomainError("target_latency_ms must be positive")
        if not self.data_rate_mbps > 0:
            raise ChannelDomainError("data_rate_mbps must be positive")
        if self.initial_offset_bits < 0:
            raise ChannelDomainError("initial_offset_bits must be non-negative")
        for name in ("increase_step_bits", "decrease_step_bits", "max_threshold_events", "min_ts_bits"):
            if getattr(self, name) < 1:
                raise ChannelDomainError(f"{name} must be a positive integer")
        if self.decrease_step_bits <= self.increase_step_bits:
            raise ChannelDomainError(
                "decrease_step_bits must exceed increase_step_bits or the loop never settles "
                f"(got {self.decrease_step_bits} <= {self.increase_step_bits})"
            )
        if self.data_rate_mbps not in self.slope_model:
            raise ChannelDomainError(f"slope model has no entry for {self.data_rate_mbps} Mbps")

    @property
    def slope(self) -> float:
        return self.slope_model.slope(self.data_rate_mbps)

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["slope_model"] = self.slope_model.to_dict()
        return d


@dataclass(frozen=True)
class ControllerState:
    step: int
    ts_bits: int
    events_count: int = 0


@dataclass(frozen=True)
class TraceRecord:
    step: int
    ts_bits: int
    latency_ms: float
    threshold_event: bool


@dataclass(frozen=True)
class AdaptationTrace:
    params: AdaptationParams
    start_ts_bits: int
    records: tuple[TraceRecord, ...]
    start_clamped: bool = False

    @property
    def event_count(self) -> int:
        return sum(r.threshold_event for r in self.records)

    @property
    def ts_series(self) -> list[int]:
        return [r.ts_bits for r in self.records]

    @property
    def latency_series(self) -> list[float]:
        return [r.latency_ms for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for r in self.records:
            writer.writerow([r.step, r.ts_bits, repr(r.latency_ms), int(r.threshold_event)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "meta": {
                "params": self.params.to_dict(),
                "start_ts_bits": self.start_ts_bits,
                "start_clamped": self.start_clamped,
            },
            "records": [asdict(r) for r in self.records],
        }
        return json.dumps(doc, indent=2) + "\n"


def _initial_ts(model: LinearModel, params: AdaptationParams) -> tuple[int, bool]:
    raw = predict_ts(model, params.target_latency_ms, params.data_rate_mbps) - params.initial_offset_bits
    if raw < params.min_ts_bits:
        return params.min_ts_bits, True
    return raw, False


def initial_ts(model: LinearModel, params: AdaptationParams) -> int:
    """Predicted size for the target latency, minus the offset, floored at ``min_ts_bits``."""
    return _initial_ts(model, params)[0]


def step(state: ControllerState, params: AdaptationParams) -> tuple[ControllerState, TraceRecord]:
    latency_ms = params.slope * state.ts_bits
    event = latency_ms >= params.target_latency_ms
    if event:
        next_ts = state.ts_bits - params.decrease_step_bits
        events = state.events_count + 1
    else:
        next_ts = state.ts_bits + params.increase_step_bits
        events = state.events_count
    record = TraceRecord(state.step, state.ts_bits, latency_ms, event)
    next_state = ControllerState(state.step + 1, max(next_ts, params.min_ts_bits), events)
    return next_state, record


def run_adaptation(
    model: LinearModel | None,
    params: AdaptationParams | None = None,
    *,
    start_ts: int | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> AdaptationTrace:
    """Step the controller until ``params.max_threshold_events`` events are recorded.

    ``start_ts`` bypasses the model prediction (``model`` may then be None).
    Raises :class:`NonTerminationError` after ``max_steps`` steps.
    """
    params = AdaptationParams() if params is None else params
    if start_ts is None:
        if model is None:
            raise ValueError("either a model or start_ts is required")
        start, clamped = _initial_ts(model, params)
    else:
        if start_ts < 1:
            raise ChannelDomainError(f"start_ts must be positive, got {start_ts}")
        start, clamped = max(start_ts, params.min_ts_bits), start_ts < params.min_ts_bits

    state = ControllerState(0, start)
    records = []
    while state.events_count < params.max_threshold_events:
        if len(records) >= max_steps:
            raise NonTerminationError(
                f"adaptation did not finish within {max_steps} steps "
                f"({state.events_count}/{params.max_threshold_events} events)"
            )
        state, record = step(state, params)
        records.append(record)
    return AdaptationTrace(params, start, tuple(records), clamped)
