"""Positive-orthant probabilities of centred Gaussian vectors, dimension 0 to 3."""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgument, UnsupportedDimension
from .partials import clamp_unit


def orthant_from_offdiag(offdiag) -> float:
    """Orthant probability given the upper-triangle correlations.

    ``offdiag`` is empty for dimension 0 or 1 (callers pass the dimension
    through :func:`orthant_prob` to distinguish them), one value for a
    2x2 matrix and ``(r12, r13, r23)`` for a 3x3 matrix.
    """
    n = len(offdiag)
    if n == 1:
        r = clamp_unit(offdiag[0])
        return 0.25 + math.asin(r) / (2.0 * math.pi)
    if n == 3:
        s = sum(math.acos(clamp_unit(r)) for r in offdiag)
        return 0.5 - s / (4.0 * math.pi)
    raise UnsupportedDimension(f"no closed form for {n} correlations")


def orthant_prob(R=None, dim: int | None = None) -> float:
    """``P(X_1 >= 0, ..., X_d >= 0)`` for a centred vector with correlation ``R``.

    Parameters
    ----------
    R : array_like, CorrelationMatrix, ReducedMatrix or None
        Correlation matrix; may be omitted when ``dim`` is 0 or 1.
    dim : int, optional
        Dimension; inferred from ``R`` when not given.

    Returns
    -------
    float
        1 for ``dim=0``, 1/2 for ``dim=1``, the arcsine law for ``dim=2`` and
        ``1/2 - (arccos r12 + arccos r13 + arccos r23) / (4 pi)`` for ``dim=3``.
    """
    a = None
    if R is not None:
        a = np.asarray(getattr(R, "entries", R), dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidArgument(f"orthant_prob needs a square matrix, got shape {a.shape}")
        if dim is None:
            dim = a.shape[0]
        elif dim != a.shape[0]:
            raise InvalidArgument(f"dim={dim} does not match a {a.shape[0]}x{a.shape[0]} matrix")
    if dim is None:
        raise InvalidArgument("either R or dim must be given")
    if dim < 0:
        raise InvalidArgument(f"dim must be non-negative, got {dim}")
    if dim == 0:
        return 1.0
    if dim == 1:
        return 0.5
    if dim > 3:
        raise UnsupportedDimension(f"closed-form orthant probability only up to dim 3, got {dim}")
    if a is None:
        raise InvalidArgument(f"dim={dim} requires a correlation matrix")
    if dim == 2:
        return orthant_from_offdiag([a[0, 1]])
    return orthant_from_offdiag([a[0, 1], a[0, 2], a[1, 2]])
