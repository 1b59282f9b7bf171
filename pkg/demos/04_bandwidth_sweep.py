# %% [markdown]
# # Bandwidth sweep on a single series
#
# The analyst workflow for a recorded interval series: load the file, sweep
# the bandwidth, and compare the endpoints. A simulated series stands in for
# a recording here and is written to disk first so the same steps apply to a
# real file (one value per line, or ``beat,value`` pairs).

# %%
import tempfile
from pathlib import Path

import turnloc as tl
from turnloc import io
from turnloc.estimate import endpoints_table
from turnloc.simulate import exponential_study_spec

workdir = Path(tempfile.mkdtemp())
spec = exponential_study_spec()
series = tl.sample_series(tl.build_exponential(spec), tl.NoiseModel(1.0), tl.substream(7, 0, 0))
io.write_series(series, workdir / "series.csv")

# %%
loaded = io.load_series(workdir / "series.csv")
reports = tl.sweep_bandwidths(loaded, [5, 8, 11, 14, 17, 20], level=0.95)
table = endpoints_table(reports)
io.write_coverage_table(table, "csv", workdir / "endpoints.csv")
print((workdir / "endpoints.csv").read_text())

# %% [markdown]
# The same sweep from the shell:
#
#     turnloc analyze series.csv --h 5,8,11,14,17,20 --out results/
