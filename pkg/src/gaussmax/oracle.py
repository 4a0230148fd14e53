"""Independent checks: Monte Carlo sampling and direct quadrature.

Random numbers come from numpy's ``Philox`` counter-based bit generator
(Philox4x64-10). Normals are drawn with ``Generator.standard_normal``
(numpy's ziggurat). Samples are split into chunks of ``CHUNK`` draws; chunk
``c`` uses the ``c``-th child of ``SeedSequence(seed)``, so estimates are
deterministic for a given ``(R, n, seed)`` and identical whether chunks run
sequentially or on a thread pool.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, signal

from .corrmat import CorrelationMatrix
from .errors import InvalidArgument, InvalidSpec, NotPositiveDefinite, QuadratureFailure

GENERATOR = "numpy.random.Philox (Philox4x64-10) + SeedSequence.spawn; ziggurat normals"
CHUNK = 1 << 16
MIN_SAMPLES = 10_000
PIVOT_TOL = 1e-10
SQRT_2PI = math.sqrt(2.0 * math.pi)


def _chunk_rngs(seed: int, n: int) -> list[tuple[np.random.Generator, int]]:
    sizes = [CHUNK] * (n // CHUNK)
    if n % CHUNK:
        sizes.append(n % CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    return [(np.random.Generator(np.random.Philox(c)), s) for c, s in zip(children, sizes)]


def _run_chunks(fn, seed: int, n: int, workers: int | None):
    jobs = _chunk_rngs(seed, n)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: fn(*job), jobs))
    return [fn(rng, size) for rng, size in jobs]


def _check_samples(n: int) -> None:
    if n < MIN_SAMPLES:
        raise InvalidArgument(f"need at least {MIN_SAMPLES} samples, got {n}")


def cholesky(R: CorrelationMatrix) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == R``.

    Raises :class:`NotPositiveDefinite` when a pivot falls below
    ``PIVOT_TOL`` (relative to the unit diagonal) instead of returning NaNs.
    """
    a = np.asarray(getattr(R, "entries", R), dtype=float)
    try:
        low = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    pivots = np.diag(low) ** 2
    if not np.all(np.isfinite(low)) or np.min(pivots) < PIVOT_TOL * np.max(np.diag(a)):
        raise NotPositiveDefinite(f"smallest Cholesky pivot {np.min(pivots):.3g} below tolerance")
    return low


@dataclass(frozen=True)
class McEstimate:
    """Sample moments of the maximum with plain standard errors."""

    samples: int
    seed: int
    mean: float
    second_moment: float
    variance: float
    se_mean: float
    se_second: float
    se_variance: float

    def z_scores(self, mean: float | None, second: float, variance: float | None) -> dict[str, float]:
        """Standardized differences ``(estimate - exact) / se`` per available moment."""
        out = {"second_moment": (self.second_moment - second) / self.se_second}
        if mean is not None:
            out["mean"] = (self.mean - mean) / self.se_mean
        if variance is not None:
            out["variance"] = (self.variance - variance) / self.se_variance
        return out


def _merge_power_sums(parts: list[np.ndarray], n: int) -> np.ndarray:
    total = np.zeros(4)
    for p in parts:
        total += p
    return total / n


def sample_max_moments(
    R: CorrelationMatrix, n: int = 1_000_000, seed: int = 0, workers: int | None = None
) -> McEstimate:
    """Monte Carlo moments of ``max(X)`` for ``X ~ N(0, R)``."""
    _check_samples(n)
    low = cholesky(R)

    def chunk(rng, size):
        m = (rng.standard_normal((size, low.shape[0])) @ low.T).max(axis=1)
        m2 = m * m
        return np.array([m.sum(), m2.sum(), (m2 * m).sum(), (m2 * m2).sum()])

    s1, s2, s3, s4 = _merge_power_sums(_run_chunks(chunk, seed, n, workers), n)
    var = s2 - s1 * s1
    var_m2 = s4 - s2 * s2
    # fourth central moment of M from raw moments
    mu4 = s4 - 4 * s3 * s1 + 6 * s2 * s1**2 - 3 * s1**4
    unbias = n / (n - 1)
    return McEstimate(
        samples=n,
        seed=seed,
        mean=float(s1),
        second_moment=float(s2),
        variance=float(var),
        se_mean=math.sqrt(var * unbias / n),
        se_second=math.sqrt(var_m2 * unbias / n),
        se_variance=math.sqrt(max(mu4 - var * var, 0.0) * unbias / n),
    )


def mc_orthant(R, n: int = 1_000_000, seed: int = 0, workers: int | None = None) -> float:
    """Fraction of draws from ``N(0, R)`` with every coordinate non-negative."""
    _check_samples(n)
    a = np.asarray(getattr(R, "entries", R), dtype=float)
    if a.ndim != 2 or a.shape[0] > 6:
        raise InvalidArgument("mc_orthant supports matrices up to 6x6")
    low = cholesky(a)

    def chunk(rng, size):
        x = rng.standard_normal((size, low.shape[0])) @ low.T
        return int(np.count_nonzero(np.all(x >= 0.0, axis=1)))

    return sum(_run_chunks(chunk, seed, n, workers)) / n


def binomial_se(p: float, n: int) -> float:
    return math.sqrt(max(p * (1 - p), 1.0 / n) / n)


def simulate_ar1_maxima(rho: float, ell: int, paths: int, seed: int = 0) -> np.ndarray:
    """Maxima of ``paths`` independent stationary AR(1) segments of length ``ell``.

    Each path starts from the stationary law, ``X_1 ~ N(0, 1)``, and follows
    ``X_t = rho X_{t-1} + sqrt(1 - rho^2) e_t``.
    """
    if not -1.0 < rho < 1.0:
        raise InvalidArgument(f"|rho| must be < 1, got {rho}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    eps = rng.standard_normal((paths, ell))
    eps[:, 1:] *= math.sqrt(1.0 - rho * rho)
    x = signal.lfilter([1.0], [1.0, -rho], eps, axis=1)
    return x.max(axis=1)


# -- decomposition identities -------------------------------------------------


def max2_decomposition(x1, x2):
    """``max(x1, x2)`` written as half-sum plus half absolute difference."""
    return 0.5 * (x1 + x2) + 0.5 * np.abs(x1 - x2)


def max3_decomposition(x1, x2, x3):
    """``max(x1, x2, x3)`` via the nested two-variable identity."""
    return 0.25 * ((x1 + x2) + (x2 + x3) + np.abs(x1 - x2) + np.abs(x2 - x3)) + 0.25 * np.abs(
        (x1 + x2) - (x2 + x3) + np.abs(x1 - x2) - np.abs(x2 - x3)
    )


class Quadrant(str, Enum):
    PP = "PP"  # Y > 0, Z > 0
    NP = "NP"  # Y < 0, Z > 0
    PN = "PN"  # Y > 0, Z < 0
    NN = "NN"  # Y < 0, Z < 0


@dataclass(frozen=True)
class QuadrantSpec:
    """Bivariate normal ``(Y, Z)`` with scales ``sigma_y``, ``sigma_z`` and correlation ``xi``."""

    sigma_y: float
    sigma_z: float
    xi: float
    quadrant: Quadrant = Quadrant.PP

    def __post_init__(self):
        object.__setattr__(self, "quadrant", Quadrant(self.quadrant))
        if not (self.sigma_y > 0 and self.sigma_z > 0):
            raise InvalidSpec("standard deviations must be positive")
        if not -1.0 < self.xi < 1.0:
            raise InvalidSpec(f"|xi| must be < 1, got {self.xi}")


def difference_covariance(rho12: float, rho13: float, rho23: float) -> tuple[float, float, float]:
    """``(sigma_y, sigma_z, xi)`` for ``Y = X1 - X2`` and ``Z = X3 - X2``."""
    var_y = 2.0 - 2.0 * rho12
    var_z = 2.0 - 2.0 * rho23
    cov = rho13 - rho12 - rho23 + 1.0
    sy, sz = math.sqrt(var_y), math.sqrt(var_z)
    return sy, sz, cov / (sy * sz)


def quadrant_integral(spec: QuadrantSpec) -> float:
    """Closed-form contribution of one sign quadrant to ``E|(Y+|Y|) - (Z+|Z|)|``."""
    sy, sz, xi = spec.sigma_y, spec.sigma_z, spec.xi
    q = spec.quadrant
    if q is Quadrant.PP:
        return (-(1 - xi) * (sy + sz) + 2 * math.sqrt(sy * sy - 2 * xi * sy * sz + sz * sz)) / SQRT_2PI
    if q is Quadrant.NP:
        return (1 - xi) * sz / SQRT_2PI
    if q is Quadrant.PN:
        return (1 - xi) * sy / SQRT_2PI
    return 0.0


def bivariate_density(y, z, sigma_y: float, sigma_z: float, xi: float):
    u, v = y / sigma_y, z / sigma_z
    det = 1.0 - xi * xi
    norm = 2.0 * math.pi * math.sqrt(det) * sigma_y * sigma_z
    return np.exp(-(u * u - 2.0 * xi * u * v + v * v) / (2.0 * det)) / norm


def quadrant_integral_numeric(spec: QuadrantSpec, tol: float = 1e-8, width: float = 10.0) -> float:
    """Adaptive 2-D quadrature of the same quadrant contribution.

    The domain is truncated at ``width`` standard deviations. The positive
    quadrant is split along ``y = z`` where ``|y - z|`` has its kink.
    """
    sy, sz, xi = spec.sigma_y, spec.sigma_z, spec.xi
    ymax, zmax = width * sy, width * sz

    def dens(y, z):
        return bivariate_density(y, z, sy, sz, xi)

    pieces = []
    q = spec.quadrant
    opts = dict(epsabs=tol / 4, epsrel=1e-10)
    # dblquad integrates func(inner, outer); outer variable is z here
    if q is Quadrant.PP:
        top = min(ymax, zmax)
        pieces.append(integrate.dblquad(lambda y, z: 2 * (z - y) * dens(y, z), 0, zmax, 0, lambda z: min(z, ymax), **opts))
        pieces.append(integrate.dblquad(lambda y, z: 2 * (y - z) * dens(y, z), 0, top, lambda z: z, ymax, **opts))
    elif q is Quadrant.NP:
        pieces.append(integrate.dblquad(lambda y, z: 2 * z * dens(y, z), 0, zmax, -ymax, 0, **opts))
    elif q is Quadrant.PN:
        pieces.append(integrate.dblquad(lambda y, z: 2 * y * dens(y, z), -zmax, 0, 0, ymax, **opts))
    else:
        return 0.0
    value = sum(p[0] for p in pieces)
    err = sum(p[1] for p in pieces)
    if not err <= tol:
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds {tol:.3g}")
    return value
