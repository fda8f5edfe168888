"""Latency and channel load on the ground BS -> repeater -> UAV-BS -> users chain.

Run:  python demos/01_channel_metrics.py
"""
from uavchannel import (
    ChainTopology,
    TransmissionConfig,
    evaluate,
    sweep_latency,
    sweep_utilization_ber,
    sweep_utilization_rate,
    sweep_utilization_ts,
)

# %% Latency over three identical links.
# Every hop adds TS / rate, so 100 kbit at 1.54 Mbps costs ~65 ms per hop.
table = sweep_latency([10, 100, 1000, 10000, 100000], [1.54e6, 6e6, 10e6, 45e6])
print(table.title)
for rate, ts, lat in table.rows:
    print(f"  {rate / 1e6:6.2f} Mbps  {ts:>7d} bits  {lat:10.4f} ms")

# %% Load on the first link for 1, 3 and 5 users at 1.54 Mbps.
print("\n" + sweep_utilization_ts().to_csv())

# %% Same 100 kbit burst from 5 users at T1/E1/... rates (1.544 Mbps, not 1.54).
print(sweep_utilization_rate().to_csv())

# %% Bit errors shrink the useful rate by (1 - BER); BER is a fraction here.
print(sweep_utilization_ber().to_csv())

# %% One operating point, with the overload flag.
topo = ChainTopology(num_users=5)
point = evaluate(topo, TransmissionConfig(ts_bits=400_000, data_rate_bps=1.54e6))
print(f"5 users x 400 kbit at 1.54 Mbps: {point.utilization_pct:.1f}% overloaded={point.overloaded}")
