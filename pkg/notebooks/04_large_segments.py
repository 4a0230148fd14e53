# %% [markdown]
# # Long segments and the Gumbel limit
#
# For long AR(1) segments the normalized maximum `sqrt(2 ln ell) (M - a_ell)`
# tends to a Gumbel law. The location `a_ell` ignores `rho`, so at moderate
# `ell` the agreement is rough.

# %%
import math

import numpy as np

from gaussmax import gumbel_location
from gaussmax.oracle import simulate_ar1_maxima

gumbel_median = -math.log(math.log(2))
for ell in (64, 512, 4096):
    for rho in (0.0, 0.5):
        m = simulate_ar1_maxima(rho, ell, 50_000, seed=ell)
        z = math.sqrt(2 * math.log(ell)) * (m - gumbel_location(ell).a_ell)
        print(f"ell={ell:5d} rho={rho:.1f}  median {np.median(z):+.3f}  (Gumbel {gumbel_median:+.3f})")
