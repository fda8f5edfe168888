"""Fit the transaction-size predictor on the synthetic slope data.

Run:  python demos/02_regression_model.py
"""
from uavchannel import SlopeModel, fit_ols, generate_training_set, predict_ts, train_default_model

# %% 99 sizes (100..9900 bits) for each of 6, 10 and 45 Mbps.
samples = generate_training_set()
print(f"{len(samples)} samples, first {samples[0]}, last {samples[-1]}")

# %% Affine least squares: ts ~ intercept + a * latency + b * rate_mbps.
model = train_default_model()
print(f"intercept={model.intercept:.4f} coef_latency={model.coef_latency:.4f} coef_rate={model.coef_rate:.4f}")

# %% Query it for a 2 ms budget at 6 Mbps.
# The true answer on the 6 Mbps line is 4000 bits; a single plane across
# three rates cannot fit all three lines, hence the gap.
print("predicted TS for 2 ms @ 6 Mbps:", predict_ts(model, 2.0, 6))

# %% The 45 Mbps slope in the default table is rounded (0.00007 vs 1/15000).
exact = SlopeModel.from_channel([6, 10, 45])
exact_model = fit_ols(generate_training_set(exact))
print("with exact slopes:", predict_ts(exact_model, 2.0, 6), "bits")
