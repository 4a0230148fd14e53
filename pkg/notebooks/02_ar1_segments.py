# %% [markdown]
# # AR(1) segments
#
# With `rho_ij = rho**|j - i|` the moments become functions of the lag-one
# correlation alone. The mean has an interior maximum for `ell >= 3`, the
# second moment too, while the variance increases over the whole range.

# %%
import math

from gaussmax import independence_limits, maximize, moments_ar1, sweep

# %%
for ell in range(2, 7):
    res = moments_ar1(0.0, ell)
    print(ell, res.mean, res.second_moment, "| stored:", independence_limits(ell, "second"))

# %% [markdown]
# Maximizing lag-one correlations. The ell=3 values are the golden ratio
# conjugate `(1 - sqrt 5)/2` and `1 - sqrt 2`.

# %%
for target, ells in (("mean", (3, 4, 5)), ("second_moment", (3, 4, 5, 6))):
    for ell in ells:
        r = maximize(ell, target)
        print(f"{target:14s} ell={ell}  rho*={r.rho_star:.16f}  value={r.value:.12f}  ({r.evaluations} evaluations)")
print("(1 - sqrt 5)/2 =", (1 - math.sqrt(5)) / 2, "  1 - sqrt 2 =", 1 - math.sqrt(2))

# %% [markdown]
# Variance along a coarse grid. For `ell = 2` it is the line `1 - (1 - rho)/pi`.

# %%
for ell in (2, 3, 5):
    rows = sweep(ell, -0.9, 0.9, 0.3)
    print(ell, [round(r.variance, 5) for r in rows])

# %% [markdown]
# The same sweep as CSV, as emitted by `gaussmax sweep --ell 3`.

# %%
from gaussmax.cli import main

main(["sweep", "--ell", "3", "--min", "-0.8", "--max", "0.8", "--step", "0.4"])
