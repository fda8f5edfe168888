"""Synthetic training data and an affine least-squares predictor of transaction size.

The model is ``ts = intercept + coef_latency * latency_ms + coef_rate * rate_mbps``.
Data rate enters in Mbps; fitting the same data in bps gives different
coefficients.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Sequence

import numpy as np

from .errors import ChannelDomainError, ModelFileError, NonPhysicalPredictionError, SingularFitError

COLUMN_NAMES = ("intercept", "latency_ms", "data_rate_mbps")
DEFAULT_SLOPES = {6.0: 0.0005, 10.0: 0.0003, 45.0: 0.00007}
DEFAULT_TS_RANGE = (100, 10000, 100)


@dataclass(frozen=True)
class TrainingSample:
    latency_ms: float
    data_rate_mbps: float
    ts_bits: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.latency_ms, self.data_rate_mbps, self.ts_bits)):
            raise ValueError(f"non-finite training sample {self}")
        if self.latency_ms < 0:
            raise ValueError(f"latency_ms must be non-negative, got {self.latency_ms}")


@dataclass(frozen=True)
class SlopeModel:
    """Latency per bit (ms/bit) for each data rate in Mbps."""

    entries: Mapping[float, float] = field(default_factory=lambda: dict(DEFAULT_SLOPES))

    def __post_init__(self):
        entries = {float(r): float(s) for r, s in sorted(self.entries.items())}
        for rate, slope in entries.items():
            if not rate > 0:
                raise ChannelDomainError(f"data rate must be positive, got {rate}")
            if not slope > 0:
                raise ChannelDomainError(f"slope for {rate} Mbps must be positive, got {slope}")
        object.__setattr__(self, "entries", MappingProxyType(entries))

    @classmethod
    def from_channel(cls, rates_mbps: Sequence[float], hop_count: int = 3) -> "SlopeModel":
        """Exact slopes implied by the multi-hop latency formula.

        The default table rounds the 45 Mbps slope to 0.00007; this gives
        3 / 45e6 * 1000 = 6.67e-5 instead.
        """
        from .channel_model import latency

        return cls({r: latency(1, r * 1e6, hop_count) for r in rates_mbps})

    def slope(self, data_rate_mbps: float) -> float:
        try:
            return self.entries[float(data_rate_mbps)]
        except KeyError:
            raise ChannelDomainError(
                f"no slope for {data_rate_mbps} Mbps; known rates {list(self.entries)}"
            ) from None

    def __contains__(self, data_rate_mbps: float) -> bool:
        return float(data_rate_mbps) in self.entries

    def to_dict(self) -> dict[str, float]:
        return {repr(r): s for r, s in self.entries.items()}


@dataclass(frozen=True)
class TrainingMeta:
    rates: tuple[float, ...]
    sample_count: int
    ts_start: int | None = None
    ts_end_exclusive: int | None = None
    ts_step: int | None = None


@dataclass(frozen=True)
class LinearModel:
    coef_latency: float
    coef_rate: float
    intercept: float
    training_meta: TrainingMeta

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.coef_latency, self.coef_rate, self.intercept)):
            raise ValueError("model coefficients must be finite")
        if self.training_meta.sample_count < 4:
            raise ValueError("a model needs at least 4 training samples")

    def evaluate(self, latency_ms: float, data_rate_mbps: float) -> float:
        """Raw (unrounded) affine prediction."""
        return self.intercept + self.coef_latency * latency_ms + self.coef_rate * data_rate_mbps

    def to_json_dict(self) -> dict:
        meta = self.training_meta
        return {
            "coef_latency": self.coef_latency,
            "coef_rate": self.coef_rate,
            "intercept": self.intercept,
            "training_meta": {
                "rates": list(meta.rates),
                "ts_start": meta.ts_start,
                "ts_end_exclusive": meta.ts_end_exclusive,
                "ts_step": meta.ts_step,
                "sample_count": meta.sample_count,
            },
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LinearModel":
        """Rebuild a model, raising ``ModelFileError`` on any schema violation."""
        if not isinstance(doc, dict):
            raise ModelFileError("model document must be a JSON object")
        try:
            coefs = [doc[k] for k in ("coef_latency", "coef_rate", "intercept")]
            meta = doc["training_meta"]
            rates = meta["rates"]
            ts = [meta[k] for k in ("ts_start", "ts_end_exclusive", "ts_step")]
            count = meta["sample_count"]
        except (KeyError, TypeError) as exc:
            raise ModelFileError(f"model document missing field {exc}") from None
        if not all(_is_number(c) for c in coefs):
            raise ModelFileError("model coefficients must be numbers")
        if not isinstance(rates, list) or not all(_is_number(r) for r in rates):
            raise ModelFileError("training_meta.rates must be an array of numbers")
        if not all(t is None or _is_int(t) for t in ts) or not _is_int(count):
            raise ModelFileError("training_meta ts fields and sample_count must be integers")
        try:
            return cls(
                coef_latency=float(coefs[0]),
                coef_rate=float(coefs[1]),
                intercept=float(coefs[2]),
                training_meta=TrainingMeta(tuple(float(r) for r in rates), count, *ts),
            )
        except ValueError as exc:
            raise ModelFileError(str(exc)) from None

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "LinearModel":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ModelFileError(f"model file {path} is not valid JSON: {exc}") from None
        return cls.from_json_dict(doc)


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def generate_training_set(
    slope_model: SlopeModel | None = None,
    ts_start: int = DEFAULT_TS_RANGE[0],
    ts_end_exclusive: int = DEFAULT_TS_RANGE[1],
    ts_step: int = DEFAULT_TS_RANGE[2],
) -> list[TrainingSample]:
    """Rows ``(slope * d, rate, d)`` for every rate and every d in ``range(start, end, step)``.

    Rates come out ascending, d ascending within each rate.
    """
    slope_model = SlopeModel() if slope_model is None else slope_model
    if not slope_model.entries:
        raise ValueError("slope model is empty")
    if ts_step < 1 or ts_start < 1 or ts_start >= ts_end_exclusive:
        raise ValueError(f"bad transaction size range ({ts_start}, {ts_end_exclusive}, {ts_step})")
    return [
        TrainingSample(slope * d, rate, d)
        for rate, slope in slope_model.entries.items()
        for d in range(ts_start, ts_end_exclusive, ts_step)
    ]


def _solve_normal_equations(gram: np.ndarray, rhs: np.ndarray, rtol: float = 1e-10) -> np.ndarray:
    """Gaussian elimination with partial pivoting on a symmetric PSD system.

    Columns are eliminated in order, so a vanishing pivot identifies the
    first column that is a linear combination of the ones before it.
    """
    n = gram.shape[0]
    a = np.hstack([gram.astype(float), rhs.reshape(-1, 1).astype(float)])
    diag = np.diag(gram).astype(float).copy()
    for j in range(n):
        p = j + int(np.argmax(np.abs(a[j:, j])))
        if abs(a[p, j]) <= rtol * max(diag[j], np.finfo(float).tiny):
            raise SingularFitError(
                f"design column {COLUMN_NAMES[j]!r} is linearly dependent on the preceding columns",
                column=COLUMN_NAMES[j],
            )
        if p != j:
            a[[j, p]] = a[[p, j]]
        for i in range(j + 1, n):
            a[i, j:] -= (a[i, j] / a[j, j]) * a[j, j:]
    x = np.zeros(n)
    for j in range(n - 1, -1, -1):
        x[j] = (a[j, n] - a[j, j + 1 : n] @ x[j + 1 :]) / a[j, j]
    return x


def fit_ols(
    samples: Sequence[TrainingSample],
    ts_range: tuple[int, int, int] | None = None,
) -> LinearModel:
    """Least-squares fit of ``ts_bits`` on ``[1, latency_ms, data_rate_mbps]``.

    ``ts_range`` is recorded in the model metadata when the samples came
    from :func:`generate_training_set`.
    """
    n = len(samples)
    if n < 4:
        raise SingularFitError(
            f"need more samples than the 3 parameters (at least 4), got {n}", column=None
        )
    design = np.empty((n, 3))
    design[:, 0] = 1.0
    design[:, 1] = [s.latency_ms for s in samples]
    design[:, 2] = [s.data_rate_mbps for s in samples]
    target = np.array([s.ts_bits for s in samples], dtype=float)

    beta = _solve_normal_equations(design.T @ design, design.T @ target)
    # one round of iterative refinement against the original design
    residual = target - design @ beta
    beta = beta + _solve_normal_equations(design.T @ design, design.T @ residual)

    start, end, step = ts_range if ts_range is not None else (None, None, None)
    meta = TrainingMeta(
        rates=tuple(sorted({s.data_rate_mbps for s in samples})),
        sample_count=n,
        ts_start=start,
        ts_end_exclusive=end,
        ts_step=step,
    )
    return LinearModel(
        coef_latency=float(beta[1]),
        coef_rate=float(beta[2]),
        intercept=float(beta[0]),
        training_meta=meta,
    )


def train_default_model(slope_model: SlopeModel | None = None) -> LinearModel:
    samples = generate_training_set(slope_model, *DEFAULT_TS_RANGE)
    return fit_ols(samples, ts_range=DEFAULT_TS_RANGE)


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def predict_ts(model: LinearModel, target_latency_ms: float, data_rate_mbps: float) -> int:
    """Predicted transaction size in bits, rounded half away from zero.

    Raises :class:`NonPhysicalPredictionError` if the prediction is not positive.
    """
    raw = model.evaluate(target_latency_ms, data_rate_mbps)
    if not raw > 0:
        raise NonPhysicalPredictionError(raw)
    rounded = round_half_away(raw)
    if rounded <= 0:
        raise NonPhysicalPredictionError(raw)
    return rounded
