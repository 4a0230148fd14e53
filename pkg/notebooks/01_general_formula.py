# %% [markdown]
# # Moments of the maximum for an arbitrary correlation matrix
#
# For a centred Gaussian vector with unit variances, the mean of the maximum
# is a sum over ordered pairs and the second moment a sum over ordered
# triples. Each summand needs a small orthant probability of partial
# correlations between differences `X_i - X_j`.

# %%
import numpy as np

from gaussmax import new_correlation_matrix, mean_max, second_moment_max, variance_max
from gaussmax.moments import mean_max_terms, second_moment_terms
from gaussmax.oracle import sample_max_moments

# %% [markdown]
# A hand-picked 5x5 correlation matrix.

# %%
R = new_correlation_matrix(
    [
        [1.0, 0.3, -0.2, 0.1, 0.0],
        [0.3, 1.0, 0.4, -0.1, 0.2],
        [-0.2, 0.4, 1.0, 0.25, -0.3],
        [0.1, -0.1, 0.25, 1.0, 0.15],
        [0.0, 0.2, -0.3, 0.15, 1.0],
    ]
)
res = variance_max(R)
print(res)
print("summands:", len(mean_max_terms(R)), "for E(M),", len(second_moment_terms(R)), "(+1) for E(M^2)")

# %% [markdown]
# Compare with a million Monte Carlo draws.

# %%
est = sample_max_moments(R, 1_000_000, seed=1)
print(f"mean   {res.mean:.6f}  MC {est.mean:.6f} +- {est.se_mean:.6f}")
print(f"second {res.second_moment:.6f}  MC {est.second_moment:.6f} +- {est.se_second:.6f}")
print(f"var    {res.variance:.6f}  MC {est.variance:.6f} +- {est.se_variance:.6f}")

# %% [markdown]
# With six variables only the second moment has a closed form.

# %%
rng = np.random.default_rng(0)
a = rng.standard_normal((6, 8))
c = a @ a.T
R6 = new_correlation_matrix(c / np.sqrt(np.outer(np.diag(c), np.diag(c))))
print("E(M^2), ell=6:", second_moment_max(R6))
try:
    mean_max(R6)
except Exception as exc:
    print(type(exc).__name__, "-", exc)
