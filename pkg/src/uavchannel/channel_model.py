"""Closed-form packet metrics for a chain of identical-rate links.

Units are fixed throughout: transaction size in bits, data rate in
bits/second, window in seconds, latency in milliseconds and utilization
in percent.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ChannelDomainError


@dataclass(frozen=True)
class ChainTopology:
    """Ground BS -> aerial repeater -> UAV base station -> user cluster.

    ``hop_distances_km`` is descriptive metadata; no metric uses it.
    """

    hop_count: int = 3
    hop_distances_km: tuple[float, ...] = field(default=(10.0, 10.0, 1.0))
    num_users: int = 1

    def __post_init__(self):
        object.__setattr__(self, "hop_distances_km", tuple(float(d) for d in self.hop_distances_km))
        if self.hop_count < 1:
            raise ChannelDomainError(f"hop_count must be >= 1, got {self.hop_count}")
        if len(self.hop_distances_km) != self.hop_count:
            raise ChannelDomainError(
                f"expected {self.hop_count} hop distances, got {len(self.hop_distances_km)}"
            )
        if any(d < 0 for d in self.hop_distances_km):
            raise ChannelDomainError("hop distances must be non-negative")
        if self.num_users < 1:
            raise ChannelDomainError(f"num_users must be >= 1, got {self.num_users}")


@dataclass(frozen=True)
class TransmissionConfig:
    ts_bits: int
    data_rate_bps: float
    window_s: float = 1.0
    ber: float = 0.0

    def __post_init__(self):
        if self.ts_bits < 1:
            raise ChannelDomainError(f"ts_bits must be >= 1, got {self.ts_bits}")
        _check_positive("data_rate_bps", self.data_rate_bps)
        _check_positive("window_s", self.window_s)
        _check_ber(self.ber)


@dataclass(frozen=True)
class MetricResult:
    latency_ms: float
    utilization_pct: float

    @property
    def overloaded(self) -> bool:
        return self.utilization_pct > 100.0


def _check_positive(name: str, value: float) -> None:
    # `not value > 0` also rejects NaN
    if not value > 0:
        raise ChannelDomainError(f"{name} must be positive, got {value!r}")


def _check_ber(ber: float) -> None:
    if not 0.0 <= ber < 1.0:
        raise ChannelDomainError(f"ber must lie in [0, 1), got {ber!r}")


def latency(ts_bits: float, data_rate_bps: float, hop_count: int = 3) -> float:
    """Total transmission delay in ms over ``hop_count`` identical links.

    >>> latency(1000, 6.0e6, 3)
    0.5
    """
    _check_positive("data_rate_bps", data_rate_bps)
    if hop_count < 1:
        raise ChannelDomainError(f"hop_count must be >= 1, got {hop_count}")
    if ts_bits < 0:
        raise ChannelDomainError(f"ts_bits must be non-negative, got {ts_bits}")
    return (ts_bits / data_rate_bps) * hop_count * 1000


def utilization(ts_bits: float, num_users: int, data_rate_bps: float, window_s: float = 1.0) -> float:
    """Share of link capacity used by ``num_users`` senders of ``ts_bits`` each, in percent.

    Values above 100 are returned unchanged; see ``MetricResult.overloaded``.
    """
    _check_positive("data_rate_bps", data_rate_bps)
    _check_positive("window_s", window_s)
    return (ts_bits * num_users / (data_rate_bps * window_s)) * 100


def utilization_ber(
    ts_bits: float, num_users: int, data_rate_bps: float, ber: float, window_s: float = 1.0
) -> float:
    """Utilization with the effective rate reduced to ``data_rate_bps * (1 - ber)``.

    ``ber`` is a fraction, not a percentage.
    """
    _check_positive("data_rate_bps", data_rate_bps)
    _check_positive("window_s", window_s)
    _check_ber(ber)
    return (ts_bits * num_users / (data_rate_bps * (1 - ber) * window_s)) * 100


def evaluate(topology: ChainTopology, config: TransmissionConfig) -> MetricResult:
    return MetricResult(
        latency_ms=latency(config.ts_bits, config.data_rate_bps, topology.hop_count),
        utilization_pct=utilization_ber(
            config.ts_bits, topology.num_users, config.data_rate_bps, config.ber, config.window_s
        ),
    )
