"""Independent reference routines used only by the tests.

None of these import the package under test.
"""
import numpy as np

REFERENCE_RATES = (6, 10, 45)
DEFAULT_SLOPES = (0.0005, 0.0003, 0.00007)


def reference_rows():
    rows = []
    for rate, slope in zip(REFERENCE_RATES, DEFAULT_SLOPES):
        for d in range(100, 10000, 100):
            rows.append((slope * d, rate, d))
    return rows


def pinv_fit(rows):
    """(intercept, coef_latency, coef_rate) via the Moore-Penrose pseudoinverse."""
    a = np.asarray(rows, dtype=float)
    design = np.column_stack([np.ones(len(a)), a[:, 0], a[:, 1]])
    beta = np.linalg.pinv(design) @ a[:, 2]
    return tuple(float(b) for b in beta)


def sawtooth_loop(start_d, slope=0.0005, target=2.0, up=100, down=400, events=3):
    """Straight rewrite of the adaptive transfer loop; returns (d_values, y_values)."""
    d = start_d
    d_values, y_values = [], []
    count = 0
    while count < events:
        y = slope * d
        d_values.append(d)
        y_values.append(y)
        if y >= target:
            count += 1
            d -= down
        else:
            d += up
    return d_values, y_values
