# %% [markdown]
# # One simulated series, end to end
#
# Simulate the exponential-trend model, estimate the trend with a sliding
# minimum, fit the noise rate, and read off the 95% interval for the minimum
# location. With matplotlib installed the four usual panels are saved to
# ``simulated_series.png``.

# %%
import numpy as np

import turnloc as tl
from turnloc.simulate import exponential_study_spec

spec = exponential_study_spec()          # t0 = 500 on 1..1000
trend = tl.build_exponential(spec)
series = tl.sample_series(trend, tl.NoiseModel(1.0), tl.substream(seed=2024, h=0, replicate=0))

report = tl.estimate_minimum_location(series, h=20, level=0.95)
print("tau_hat  ", report.tau_hat)
print("rate_hat ", report.rate_hat)
print("interval ", report.interval, "length", report.interval.length)
print("covers t0", spec.t0 in report.interval)

# %%
try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    t = series.indices
    lo, hi = report.interval.left, report.interval.right
    zoom = (t > lo - 80) & (t < hi + 80)
    fig, ax = plt.subplots(4, 1, figsize=(8, 10))
    ax[0].plot(t, series.values, lw=0.5)
    ax[1].plot(t[zoom], series.values[zoom], ".", ms=2)
    ax[1].plot(t[zoom], report.trend_hat.levels[zoom], "r-")
    ax[2].plot(t[zoom], report.distribution.mass[zoom])
    positive = report.distribution.mass > 0
    ax[3].plot(t[zoom & positive], np.log(report.distribution.mass[zoom & positive]))
    for a in ax:
        a.axvline(lo, color="k", ls="--")
        a.axvline(hi, color="k", ls="--")
    fig.tight_layout()
    fig.savefig("simulated_series.png", dpi=120)
    print("saved simulated_series.png")
