"""Correlations between differences ``X_i - X_j`` and their partial correlations.

Notation follows the usual pivot-first convention: ``r_{i,jk}`` is the
correlation between ``X_i - X_j`` and ``X_i - X_k``; ``r_{i,mn.j}`` is the
partial correlation of ``X_i - X_m`` and ``X_i - X_n`` given ``X_i - X_j``;
``r_{i,mn.jk}`` additionally conditions on ``X_i - X_k``.

Partial correlations are evaluated from their explicit cofactor expressions,
never by inverting a covariance matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .corrmat import CorrelationMatrix
from .errors import (
    DegenerateConditioning,
    DegenerateDifference,
    DuplicateIndex,
    IndexOutOfRange,
    InvalidArgument,
    UnsupportedDimension,
)

CLAMP_TOL = 1e-12
DEGENERACY_TOL = 1e-14


def clamp_unit(x: float, what: str = "correlation") -> float:
    """Clamp ``x`` into [-1, 1], tolerating only rounding-sized excursions."""
    if -1.0 <= x <= 1.0:
        return x
    if abs(x) <= 1.0 + CLAMP_TOL:
        return math.copysign(1.0, x)
    raise InvalidArgument(f"{what} {x!r} lies outside [-1, 1]")


@dataclass(frozen=True)
class PartialCorrelation:
    """A (partial) correlation between two differences sharing the pivot ``i``."""

    value: float
    pivot: int
    pair: tuple[int, int]
    conditioning: tuple[int, ...] = ()

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class ReducedMatrix:
    """Matrix of partial correlations whose orthant probability enters a moment sum."""

    entries: np.ndarray
    pivot: int
    conditioning: tuple[int, ...]
    free: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def offdiag(self) -> list[float]:
        """Upper-triangle entries in row-major order."""
        n = self.dim
        return [float(self.entries[a, b]) for a in range(n) for b in range(a + 1, n)]


def _check_indices(ell: int, *idx: int) -> None:
    for x in idx:
        if not 1 <= x <= ell:
            raise IndexOutOfRange(f"index {x} outside 1..{ell}")


def diff_correlation(R: CorrelationMatrix, i: int, j: int, k: int) -> float:
    """Correlation ``r_{i,jk}`` between ``X_i - X_j`` and ``X_i - X_k``.

    When ``j == i`` (or ``k == i``) the corresponding difference is replaced
    by ``X_i`` itself.
    """
    _check_indices(R.dim, i, j, k)
    a = R.entries
    i, j, k = i - 1, j - 1, k - 1
    if j == i and k == i:
        return 1.0
    if k == i or j == i:
        other = j if k == i else k
        gap = 1.0 - a[i, other]
        if gap <= DEGENERACY_TOL:
            raise DegenerateDifference(f"rho_{i + 1}{other + 1} = 1")
        return math.sqrt(gap / 2.0)
    gj = 1.0 - a[i, j]
    gk = 1.0 - a[i, k]
    if gj <= DEGENERACY_TOL or gk <= DEGENERACY_TOL:
        raise DegenerateDifference(f"a correlation with X_{i + 1} equals 1")
    if j == k:
        return 1.0
    # grouped so that swapping j and k is bit-exact
    value = ((1.0 + a[j, k]) - (a[i, j] + a[i, k])) / math.sqrt(4.0 * gj * gk)
    return clamp_unit(value, "difference correlation")


def _diff_table(R: CorrelationMatrix, i: int) -> np.ndarray:
    """All ``r_{i,jk}`` for ``j, k != i`` as a 0-based array (row/col ``i-1`` unused)."""
    a = R.entries
    p = i - 1
    gap = 1.0 - a[p]
    gap[p] = 1.0
    if np.any(gap <= DEGENERACY_TOL):
        raise DegenerateDifference(f"a correlation with X_{i} equals 1")
    num = (1.0 + a) - (a[p][:, None] + a[p][None, :])
    table = num / np.sqrt(4.0 * np.outer(gap, gap))
    np.fill_diagonal(table, 1.0)
    if np.any(np.abs(table) > 1.0 + CLAMP_TOL):
        raise InvalidArgument("difference correlation outside [-1, 1]")
    return np.clip(table, -1.0, 1.0)


def complement_indices(ell: int, fixed: Iterable[int]) -> tuple[int, ...]:
    """Sorted indices of ``1..ell`` not in ``fixed``."""
    fixed = list(fixed)
    if len(set(fixed)) != len(fixed):
        raise DuplicateIndex(f"repeated index in {fixed}")
    _check_indices(ell, *fixed)
    taken = set(fixed)
    return tuple(x for x in range(1, ell + 1) if x not in taken)


def _one_from_table(t: np.ndarray, j: int, m: int, n: int) -> float:
    # 0-based indices into a difference-correlation table
    rmn, rjm, rjn = t[m, n], t[j, m], t[j, n]
    dm = 1.0 - rjm * rjm
    dn = 1.0 - rjn * rjn
    if dm <= DEGENERACY_TOL or dn <= DEGENERACY_TOL:
        raise DegenerateConditioning("conditioning difference is perfectly correlated")
    return clamp_unit((rmn - rjm * rjn) / math.sqrt(dm * dn), "partial correlation")


def _two_from_table(t: np.ndarray, j: int, k: int, m: int, n: int) -> float:
    rmn = t[m, n]
    rjm, rjn, rkm, rkn, rjk = t[j, m], t[j, n], t[k, m], t[k, n], t[j, k]
    num = (
        rmn
        - rjm * rjn
        - rkm * rkn
        + rkm * rjn * rjk
        + rjm * rkn * rjk
        - rmn * rjk * rjk
    )
    dm = 1.0 - rjm * rjm - rkm * rkm + 2.0 * rjm * rkm * rjk - rjk * rjk
    dn = 1.0 - rjn * rjn - rkn * rkn + 2.0 * rjn * rkn * rjk - rjk * rjk
    if dm <= DEGENERACY_TOL or dn <= DEGENERACY_TOL:
        raise DegenerateConditioning("conditioning differences are collinear")
    return clamp_unit(num / math.sqrt(dm * dn), "partial correlation")


def partial_corr_one(R: CorrelationMatrix, i: int, j: int, m: int, n: int) -> PartialCorrelation:
    """``r_{i,mn.j}``: correlation of ``X_i - X_m`` and ``X_i - X_n`` given ``X_i - X_j``."""
    complement_indices(R.dim, (i, j, m, n))
    t = _diff_table(R, i)
    value = _one_from_table(t, j - 1, m - 1, n - 1)
    return PartialCorrelation(value, i, (m, n), (j,))


def partial_corr_two(
    R: CorrelationMatrix, i: int, j: int, k: int, m: int, n: int
) -> PartialCorrelation:
    """``r_{i,mn.jk}``: as :func:`partial_corr_one` but also given ``X_i - X_k``."""
    complement_indices(R.dim, (i, j, k, m, n))
    t = _diff_table(R, i)
    value = _two_from_table(t, j - 1, k - 1, m - 1, n - 1)
    return PartialCorrelation(value, i, (m, n), (j, k))


def _assemble(free: tuple[int, ...], pair_value) -> np.ndarray:
    out = np.eye(len(free))
    for a, b in combinations(range(len(free)), 2):
        out[a, b] = out[b, a] = pair_value(free[a] - 1, free[b] - 1)
    return out


def _reduced_one(R: CorrelationMatrix, i: int, j: int, t: np.ndarray) -> ReducedMatrix:
    free = complement_indices(R.dim, (i, j))
    entries = _assemble(free, lambda m, n: _one_from_table(t, j - 1, m, n))
    return ReducedMatrix(entries, i, (j,), free)


def _reduced_two(R: CorrelationMatrix, i: int, j: int, k: int, t: np.ndarray) -> ReducedMatrix:
    free = complement_indices(R.dim, (i, j, k))
    entries = _assemble(free, lambda m, n: _two_from_table(t, j - 1, k - 1, m, n))
    return ReducedMatrix(entries, i, (j, k), free)


def reduced_matrix_one(R: CorrelationMatrix, i: int, j: int) -> ReducedMatrix:
    """``R_{i,j}``: partial correlations of the free differences given ``X_i - X_j``.

    Defined for ``ell`` 4 (2x2) and 5 (3x3).
    """
    if R.dim not in (4, 5):
        raise UnsupportedDimension(f"R_(i,j) is implemented for ell = 4, 5; got {R.dim}")
    return _reduced_one(R, i, j, _diff_table(R, i))


def reduced_matrix_two(R: CorrelationMatrix, i: int, j: int, k: int) -> ReducedMatrix:
    """``R_{i,jk}``: partial correlations given ``X_i - X_j`` and ``X_i - X_k``.

    Defined for ``ell`` 5 (2x2) and 6 (3x3).
    """
    if R.dim not in (5, 6):
        raise UnsupportedDimension(f"R_(i,jk) is implemented for ell = 5, 6; got {R.dim}")
    return _reduced_two(R, i, j, k, _diff_table(R, i))
