# %% [markdown]
# # Coverage study over bandwidths
#
# 200 realizations per bandwidth for both trend families, with the reference
# values alongside. Runs in a few seconds.

# %%
import turnloc as tl
from turnloc.simulate import STUDY_BANDWIDTHS, exponential_study_spec, linear_study_spec

reference = {
    "linear": ((0.86, 0.88, 0.94, 0.92, 0.95, 0.98), (34, 35, 35, 38, 42, 44)),
    "exponential": ((0.74, 0.78, 0.87, 0.90, 0.92, 0.94), (29, 29, 32, 35, 37, 42)),
}

for name, spec in (("linear", linear_study_spec()), ("exponential", exponential_study_spec())):
    table = tl.coverage_study(tl.StudyConfig(spec, realizations=200, seed=1), workers=4)
    print(f"\n{name} trend")
    print("   h  coverage (ref)   length (ref)")
    for (h, row), cov, length in zip(table, *reference[name]):
        print(f"{h:4d}  {row.coverage_rate:.3f} ({cov:.2f})   {row.mean_interval_length:5.1f} ({length})")
