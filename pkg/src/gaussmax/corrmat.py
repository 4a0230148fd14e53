"""Validated correlation matrices and the AR(1) family.

Indices in the public API are 1-based, matching the usual ``rho_ij``
notation. The underlying array is stored read-only.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    Asymmetric,
    EllOutOfRange,
    InvalidArgument,
    NonUnitDiagonal,
    NotPositiveSemidefinite,
    OutOfRangeEntry,
    RhoOutOfRange,
)

SYMMETRY_TOL = 1e-12
DIAGONAL_TOL = 1e-12
RANGE_TOL = 1e-12
PIVOT_TOL = 1e-10
MAX_AR1_ELL = 6


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """A symmetric, unit-diagonal, positive semidefinite matrix.

    Build instances with :func:`new_correlation_matrix` or :func:`ar1_matrix`;
    the constructor itself does not validate.
    """

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def rho(self, i: int, j: int) -> float:
        """Correlation between ``X_i`` and ``X_j`` (1-based)."""
        return float(self.entries[i - 1, j - 1])

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, CorrelationMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"CorrelationMatrix(dim={self.dim}, entries={self.entries.tolist()!r})"


def _ldl_pivots(a: np.ndarray) -> np.ndarray:
    """Diagonal of an unpivoted LDL^T factorization.

    Pivots within ``PIVOT_TOL`` of zero (relative to the largest pivot seen)
    are treated as exact zeros, so nearly singular matrices go through.
    """
    n = a.shape[0]
    low = np.zeros_like(a)
    d = np.zeros(n)
    scale = 0.0
    for k in range(n):
        dk = a[k, k] - np.dot(low[k, :k] ** 2, d[:k])
        scale = max(scale, abs(dk), a[k, k])
        tol = PIVOT_TOL * scale
        if dk < -tol:
            d[k] = dk
            return d[: k + 1]
        if dk <= tol:
            # zero pivot: the column must vanish too for a PSD matrix
            col = a[k + 1 :, k] - low[k + 1 :, :k] @ (low[k, :k] * d[:k])
            if np.any(np.abs(col) > np.sqrt(tol * scale)):
                d[k] = -np.inf
                return d[: k + 1]
            d[k] = 0.0
            continue
        d[k] = dk
        low[k, k] = 1.0
        low[k + 1 :, k] = (a[k + 1 :, k] - low[k + 1 :, :k] @ (low[k, :k] * d[:k])) / dk
    return d


def new_correlation_matrix(entries) -> CorrelationMatrix:
    """Validate ``entries`` and wrap them as a :class:`CorrelationMatrix`.

    Raises
    ------
    InvalidArgument
        Not a finite square matrix of size at least 2.
    NonUnitDiagonal, Asymmetric, OutOfRangeEntry, NotPositiveSemidefinite
        The corresponding invariant fails.
    """
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgument(f"correlation matrix must be square, got shape {a.shape}")
    if a.shape[0] < 2:
        raise InvalidArgument("correlation matrix must be at least 2x2")
    if not np.all(np.isfinite(a)):
        raise InvalidArgument("correlation matrix has non-finite entries")
    if np.any(np.abs(np.diag(a) - 1.0) > DIAGONAL_TOL):
        raise NonUnitDiagonal(f"diagonal must be 1, got {np.diag(a).tolist()}")
    if np.any(np.abs(a - a.T) > SYMMETRY_TOL):
        raise Asymmetric("correlation matrix is not symmetric")
    if np.any(np.abs(a) > 1.0 + RANGE_TOL):
        raise OutOfRangeEntry("correlation entries must lie in [-1, 1]")
    a = 0.5 * (a + a.T)
    np.fill_diagonal(a, 1.0)
    np.clip(a, -1.0, 1.0, out=a)
    pivots = _ldl_pivots(a)
    if np.any(pivots < 0):
        raise NotPositiveSemidefinite(
            f"factorization failed at pivot {len(pivots)} (value {pivots[-1]:.3g})"
        )
    a.flags.writeable = False
    return CorrelationMatrix(a)


def ar1_matrix(rho: float, ell: int) -> CorrelationMatrix:
    """Correlation matrix of ``ell`` consecutive AR(1) observations.

    Entry ``(i, j)`` is ``rho**|j - i|``.
    """
    check_rho(rho)
    if not 2 <= ell <= MAX_AR1_ELL:
        raise EllOutOfRange(f"ell must be in 2..{MAX_AR1_ELL}, got {ell}")
    lags = np.abs(np.subtract.outer(np.arange(ell), np.arange(ell)))
    return new_correlation_matrix(float(rho) ** lags)


def check_rho(rho: float) -> float:
    if not (np.isfinite(rho) and -1.0 < rho < 1.0):
        raise RhoOutOfRange(f"lag-one correlation must satisfy |rho| < 1, got {rho}")
    return float(rho)


def parse_matrix_text(text: str) -> CorrelationMatrix:
    """Parse the plain-text matrix format.

    The first non-comment line holds ``ell``; the next ``ell`` lines hold the
    rows. Lines starting with ``#`` and blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidArgument("empty matrix file")
    try:
        ell = int(lines[0])
    except ValueError:
        raise InvalidArgument(f"first line must be the dimension, got {lines[0]!r}") from None
    rows = lines[1:]
    if len(rows) != ell:
        raise InvalidArgument(f"expected {ell} rows, found {len(rows)}")
    try:
        values = [[float(tok) for tok in row.split()] for row in rows]
    except ValueError as exc:
        raise InvalidArgument(f"bad matrix entry: {exc}") from None
    if any(len(row) != ell for row in values):
        raise InvalidArgument(f"every row must have {ell} entries")
    return new_correlation_matrix(values)


def read_matrix_file(path: str | os.PathLike) -> CorrelationMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix_text(fh.read())


def format_matrix_text(matrix: CorrelationMatrix) -> str:
    rows = [" ".join(f"{x:.17g}" for x in row) for row in matrix.entries]
    return "\n".join([str(matrix.dim), *rows]) + "\n"
