"""Sawtooth adaptation of transaction size against a 2 ms latency target.

Run:  python demos/03_adaptive_loop.py [--plot]
"""
import sys

from uavchannel import AdaptationParams, run_adaptation, train_default_model

model = train_default_model()
trace = run_adaptation(model, AdaptationParams())
print(f"start at {trace.start_ts_bits} bits (prediction minus 1000)")

# %% Grow by 100 bits per step, drop 400 bits whenever latency reaches 2 ms,
# stop at the third threshold event.
for r in trace.records:
    mark = "  <- threshold" if r.threshold_event else ""
    print(f"t={r.step:2d}  TS={r.ts_bits:5d} bits  L={r.latency_ms:.4f} ms{mark}")

# %% Slower start: a larger offset just adds climbing steps before the first peak.
longer = run_adaptation(model, AdaptationParams(initial_offset_bits=2000))
print(f"\noffset 2000: {len(longer.records)} steps vs {len(trace.records)}")

if "--plot" in sys.argv:
    import matplotlib.pyplot as plt

    fig, (ax_l, ax_ts) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    ax_l.plot([r.step for r in trace.records], trace.latency_series, "o-")
    ax_l.axhline(2.0, color="grey", ls="--")
    ax_l.set_ylabel("latency (ms)")
    ax_ts.plot([r.step for r in trace.records], trace.ts_series, "o-", color="g")
    ax_ts.set_ylabel("TS (bits)")
    ax_ts.set_xlabel("step (minutes)")
    plt.tight_layout()
    plt.show()
