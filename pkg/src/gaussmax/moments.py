"""First and second moments of ``M = max(X_1, ..., X_ell)``.

``X`` is a centred Gaussian vector with unit variances and correlation matrix
``R``. Both moments are finite sums over ordered index tuples:

    E(M)   = sum_i sum_{j != i} sqrt((1 - rho_ij) / (4 pi)) * Phi_{ell-2}(R_{i,j})
    E(M^2) = 1 + sum_i sum_{j != i} sum_{k not in {i, j}} h(rho_ij, rho_ik, rho_jk) * Phi_{ell-3}(R_{i,jk})

where ``Phi_d`` is a d-variate orthant probability of a matrix of partial
correlations between differences (see :mod:`gaussmax.partials`). Closed forms
for ``Phi_d`` exist up to ``d = 3``, which limits the mean to ``ell <= 5``
and the second moment to ``ell <= 6``.

Summation runs in lexicographic order of ``(i, j[, k])`` with plain
left-to-right addition, so results are bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .corrmat import CorrelationMatrix
from .errors import (
    DegenerateDifference,
    DuplicateIndex,
    NonpositiveRadicand,
    UnsupportedDimension,
)
from .orthant import orthant_from_offdiag
from .partials import DEGENERACY_TOL, _diff_table, _reduced_one, _reduced_two, diff_correlation

MAX_ELL_MEAN = 5
MAX_ELL_SECOND = 6

_FOUR_PI = 4.0 * math.pi


class Method(str, Enum):
    GENERAL_AFONJA = "general_afonja"
    AR1_CLOSED_FORM = "ar1_closed_form"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class MomentResult:
    """Moments of the maximum for one correlation matrix.

    ``mean`` and ``variance`` are ``None`` when only the second moment is
    available (``ell = 6``).
    """

    ell: int
    mean: float | None
    second_moment: float
    variance: float | None
    method: Method = Method.GENERAL_AFONJA


def h(x: float, y: float, z: float) -> float:
    """Kernel of the second-moment sum, symmetric in ``y`` and ``z``.

    ``x``, ``y``, ``z`` play the roles of ``rho_ij``, ``rho_ik``, ``rho_jk``.
    """
    x, y, z = float(x), float(y), float(z)
    radicand = 4.0 * (1.0 - x) * (1.0 - y) - (1.0 - x - y + z) ** 2
    if not radicand > 0.0:
        raise NonpositiveRadicand(f"h({x}, {y}, {z}): radicand {radicand} <= 0")
    return (1.0 - x) / _FOUR_PI * (1.0 + x - y - z) / math.sqrt(radicand)


def _check_pairs(R: CorrelationMatrix) -> None:
    a = R.entries
    n = R.dim
    for i in range(n):
        for j in range(i + 1, n):
            if 1.0 - a[i, j] <= DEGENERACY_TOL:
                raise DegenerateDifference(
                    f"rho_{i + 1}{j + 1} = 1: X_{i + 1} and X_{j + 1} coincide"
                )


def mean_max_terms(R: CorrelationMatrix) -> list[float]:
    """Individual summands of E(M), one per ordered pair ``(i, j)``."""
    ell = R.dim
    if not 2 <= ell <= MAX_ELL_MEAN:
        raise UnsupportedDimension(
            f"E(M) has a closed form only for 2 <= ell <= {MAX_ELL_MEAN}; got ell={ell} "
            "(ell = 6 needs a 4-variate orthant probability, which has no elementary form)"
        )
    _check_pairs(R)
    a = R.entries
    terms = []
    for i in range(1, ell + 1):
        table = _diff_table(R, i) if ell >= 4 else None
        for j in range(1, ell + 1):
            if j == i:
                continue
            weight = math.sqrt((1.0 - a[i - 1, j - 1]) / _FOUR_PI)
            if ell == 2:
                phi = 1.0
            elif ell == 3:
                phi = 0.5
            else:
                phi = orthant_from_offdiag(_reduced_one(R, i, j, table).offdiag())
            terms.append(float(weight * phi))
    return terms


def second_moment_terms(R: CorrelationMatrix) -> list[float]:
    """Individual h-weighted summands of E(M^2), excluding the constant 1."""
    ell = R.dim
    if not 2 <= ell <= MAX_ELL_SECOND:
        raise UnsupportedDimension(
            f"E(M^2) has a closed form only for 2 <= ell <= {MAX_ELL_SECOND}; got ell={ell}"
        )
    _check_pairs(R)
    a = R.entries
    terms = []
    for i in range(1, ell + 1):
        table = _diff_table(R, i) if ell >= 5 else None
        for j in range(1, ell + 1):
            if j == i:
                continue
            for k in range(1, ell + 1):
                if k == i or k == j:
                    continue
                weight = h(a[i - 1, j - 1], a[i - 1, k - 1], a[j - 1, k - 1])
                if ell == 3:
                    phi = 1.0
                elif ell == 4:
                    phi = 0.5
                else:
                    phi = orthant_from_offdiag(_reduced_two(R, i, j, k, table).offdiag())
                terms.append(float(weight * phi))
    return terms


def mean_max(R: CorrelationMatrix) -> float:
    """E(M) for ``2 <= ell <= 5``."""
    total = 0.0
    for t in mean_max_terms(R):
        total += t
    return total


def second_moment_max(R: CorrelationMatrix) -> float:
    """E(M^2) for ``2 <= ell <= 6``."""
    total = 1.0
    for t in second_moment_terms(R):
        total += t
    return total


def variance_max(R: CorrelationMatrix) -> MomentResult:
    """Mean, second moment and variance of the maximum (``ell <= 5``)."""
    mean = mean_max(R)
    second = second_moment_max(R)
    return MomentResult(R.dim, mean, second, second - mean * mean, Method.GENERAL_AFONJA)


def revision_identity_lhs(R: CorrelationMatrix, i: int, j: int, k: int) -> float:
    """Original form of the second-moment summand, in difference correlations.

    Equals ``h(rho_ij, rho_ik, rho_jk)`` for every distinct triple; kept as a
    public function so that the equality can be checked directly.
    """
    if len({i, j, k}) != 3:
        raise DuplicateIndex(f"indices must be distinct, got {(i, j, k)}")
    r_ji = diff_correlation(R, i, j, i)
    r_ki = diff_correlation(R, i, k, i)
    r_jk = diff_correlation(R, i, j, k)
    rest = 1.0 - r_jk * r_jk
    if rest <= 0.0:
        raise NonpositiveRadicand(f"r_({i},{j}{k}) has magnitude 1")
    return r_ji * (r_ki - r_jk * r_ji) / math.sqrt(rest) / (2.0 * math.pi)
