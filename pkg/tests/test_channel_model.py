import pytest

from uavchannel import (
    ChainTopology,
    ChannelDomainError,
    TransmissionConfig,
    evaluate,
    latency,
    utilization,
    utilization_ber,
)

REL = 1e-12


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1000, 6.0e6, 3), 0.5),
        ((0, 1.54e6, 3), 0.0),
        ((100000, 1.54e6, 3), 194.8051948051948),
    ],
)
def test_latency_examples(args, expected):
    assert latency(*args) == pytest.approx(expected, rel=REL, abs=0)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((100000, 5, 1.54e6, 1.0), 32.467532467532465),
        ((1540000, 1, 1.54e6, 1.0), 100.0),
        ((10, 1, 1.54e6, 1.0), 0.0006493506493506494),
    ],
)
def test_utilization_examples(args, expected):
    assert utilization(*args) == pytest.approx(expected, rel=REL)


@pytest.mark.parametrize(
    "ber, expected",
    [(0.0, 0.1111111111111111), (0.05, 0.11695906432748539), (0.02, 0.11337868480725624)],
)
def test_utilization_ber_examples(ber, expected):
    assert utilization_ber(10000, 5, 45e6, ber, 1.0) == pytest.approx(expected, rel=REL)


def test_overload_is_returned_not_clipped():
    assert utilization(3_080_000, 1, 1.54e6) == pytest.approx(200.0, rel=REL)


@pytest.mark.parametrize(
    "call",
    [
        lambda: latency(100, 0.0, 3),
        lambda: latency(100, -1.0, 3),
        lambda: latency(100, 1e6, 0),
        lambda: utilization(100, 1, 0.0),
        lambda: utilization(100, 1, 1e6, 0.0),
        lambda: utilization_ber(100, 1, 1e6, 1.0),
        lambda: utilization_ber(100, 1, 1e6, -0.1),
        lambda: latency(100, float("nan"), 3),
    ],
)
def test_domain_errors(call):
    with pytest.raises(ChannelDomainError):
        call()


def test_topology_defaults_and_validation():
    topo = ChainTopology()
    assert topo.hop_count == 3
    assert topo.hop_distances_km == (10.0, 10.0, 1.0)
    with pytest.raises(ChannelDomainError):
        ChainTopology(hop_count=2)
    with pytest.raises(ChannelDomainError):
        ChainTopology(hop_count=0, hop_distances_km=())
    with pytest.raises(ChannelDomainError):
        ChainTopology(num_users=0)


def test_distances_do_not_affect_metrics():
    cfg = TransmissionConfig(ts_bits=1000, data_rate_bps=6e6)
    near = evaluate(ChainTopology(hop_distances_km=(0, 0, 0)), cfg)
    far = evaluate(ChainTopology(hop_distances_km=(500, 500, 50)), cfg)
    assert near == far
    assert near.latency_ms == 0.5


def test_transmission_config_validation():
    with pytest.raises(ChannelDomainError):
        TransmissionConfig(ts_bits=0, data_rate_bps=1e6)
    with pytest.raises(ChannelDomainError):
        TransmissionConfig(ts_bits=10, data_rate_bps=1e6, ber=1.0)


def test_evaluate_flags_overload():
    res = evaluate(ChainTopology(num_users=5), TransmissionConfig(ts_bits=1_000_000, data_rate_bps=1.54e6))
    assert res.overloaded
    assert not evaluate(ChainTopology(), TransmissionConfig(ts_bits=10, data_rate_bps=1.54e6)).overloaded
