# %% [markdown]
# # E(M_3) from the max decomposition
#
# `max(x1, x2, x3)` can be written with absolute values of the differences
# `Y = X1 - X2` and `Z = X3 - X2`. The expectation then splits into four
# sign quadrants of `(Y, Z)`, each with a closed form.

# %%
import math

import numpy as np

from gaussmax.oracle import (
    Quadrant,
    QuadrantSpec,
    difference_covariance,
    max3_decomposition,
    quadrant_integral,
    quadrant_integral_numeric,
)

x = np.random.default_rng(3).standard_normal((5, 3))
print(np.max(np.abs(max3_decomposition(*x.T) - x.max(axis=1))))

# %%
r12, r13, r23 = 0.4, -0.1, 0.25
sy, sz, xi = difference_covariance(r12, r13, r23)
parts = {q.value: quadrant_integral(QuadrantSpec(sy, sz, xi, q)) for q in Quadrant}
numeric = {q.value: quadrant_integral_numeric(QuadrantSpec(sy, sz, xi, q)) for q in Quadrant}
print(parts)
print(numeric)
print("sum / 4 =", sum(parts.values()) / 4, " sqrt((1 - r13)/(4 pi)) =", math.sqrt((1 - r13) / (4 * math.pi)))
