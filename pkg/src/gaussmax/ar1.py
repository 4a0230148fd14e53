"""AR(1) segments: moments as functions of the lag-one correlation.

For ``ell`` consecutive observations of a stationary AR(1) process the
correlation matrix is ``rho**|j - i|``; everything here goes through
:mod:`gaussmax.moments` on that matrix. The printed closed forms for
``ell <= 4`` are kept alongside as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import optimize

from .corrmat import ar1_matrix, check_rho
from .errors import EllOutOfRange, InvalidArgument, NoInteriorMaximum, UnsupportedDimension
from .moments import MAX_ELL_MEAN, MAX_ELL_SECOND, Method, MomentResult, mean_max, second_moment_max

EDGE = 1e-6
CROSS_CHECK_TOL = 1e-10


class Target(str, Enum):
    MEAN = "mean"
    SECOND_MOMENT = "second_moment"

    @classmethod
    def parse(cls, value) -> "Target":
        if isinstance(value, cls):
            return value
        aliases = {"mean": cls.MEAN, "second": cls.SECOND_MOMENT, "second_moment": cls.SECOND_MOMENT}
        try:
            return aliases[str(value)]
        except KeyError:
            raise InvalidArgument(f"unknown target {value!r}") from None


@dataclass(frozen=True)
class SweepRow:
    rho: float
    ell: int
    mean: float | None
    second_moment: float
    variance: float | None


@dataclass(frozen=True)
class MaximizerResult:
    ell: int
    target: Target
    rho_star: float
    value: float
    evaluations: int


@dataclass(frozen=True)
class GumbelLocation:
    ell: int
    a_ell: float


# -- printed closed forms ---------------------------------------------------


def closed_form_mean(rho: float, ell: int) -> float:
    """E(M_ell) for AR(1) from the explicit formulas, ``ell = 2, 3, 4``."""
    p = rho
    if ell == 2:
        return math.sqrt((1 - p) / math.pi)
    if ell == 3:
        return math.sqrt((1 - p) / math.pi) + math.sqrt((1 - p * p) / (4 * math.pi))
    if ell == 4:
        c = 3 + p + p * p - p**3
        q = math.sqrt((3 - p) * c)
        s1 = math.sqrt((1 - p) / math.pi)
        return (
            s1 / (4 * math.pi) * (math.pi + 2 * math.asin(1 - 2 / (3 - p)))
            + s1 / (2 * math.pi) * (math.pi + 2 * math.asin((1 + 2 * p - p * p) / q))
            + math.sqrt((1 - p * p) / math.pi) / (2 * math.pi) * (math.pi + 2 * math.asin((1 - p) ** 2 / q))
            + math.sqrt((1 - p**3) / math.pi) / (4 * math.pi) * (math.pi + 2 * math.asin(1 - 2 / c))
        )
    raise EllOutOfRange(f"no printed closed form for E(M_{ell})")


def closed_form_second_moment(rho: float, ell: int) -> float:
    """E(M_ell^2) for AR(1) from the explicit formulas, ``ell = 2, 3, 4``."""
    p = rho
    if ell == 2:
        return 1.0
    if ell == 3:
        return 1 + (1 - p) * math.sqrt((3 - p) * (1 + p)) / (2 * math.pi)
    if ell == 4:
        c = 3 + p + p * p - p**3
        q = math.sqrt((3 - p) * c)
        num = 3 + q + p * (1 - 2 * p - 2 * p * p - p**3 + p**4 - p * q)
        return 1 + num / (2 * math.pi * math.sqrt((1 + p) * c))
    raise EllOutOfRange(f"no printed closed form for E(M_{ell}^2)")


def independence_limits(ell: int, which="mean") -> float:
    """Moments of the maximum of ``ell`` independent standard normals.

    These are the stored closed-form constants, not a call through the
    general formula.
    """
    target = Target.parse(which)
    sec3 = math.acos(1 / 3)
    sec4 = math.acos(1 / 4)
    rp = math.sqrt(math.pi)
    if target is Target.MEAN:
        table = {
            2: 1 / rp,
            3: 3 / (2 * rp),
            4: 3 / rp * (1 - sec3 / math.pi),
            5: 5 / rp * (1 - 3 / (2 * math.pi) * sec3),
        }
    else:
        r3 = math.sqrt(3)
        table = {
            2: 1.0,
            3: 1 + r3 / (2 * math.pi),
            4: 1 + r3 / math.pi,
            5: 1 + 5 * r3 / (2 * math.pi) * (1 - sec4 / math.pi),
            6: 1 + 5 * r3 / math.pi * (1 - 3 / (2 * math.pi) * sec4),
        }
    try:
        return table[ell]
    except KeyError:
        raise EllOutOfRange(f"no independence limit stored for ell={ell}, target={target.value}") from None


# -- general path -------------------------------------------------------------


def _check_ell(ell: int, hi: int = MAX_ELL_SECOND) -> None:
    if not (isinstance(ell, (int, np.integer)) and 2 <= ell <= hi):
        raise EllOutOfRange(f"ell must be an integer in 2..{hi}, got {ell!r}")


def moments_ar1(rho: float, ell: int, cross_check: bool = False) -> MomentResult:
    """Moments of the maximum of ``ell`` consecutive AR(1) observations.

    For ``ell = 6`` only the second moment is available; ``mean`` and
    ``variance`` are then ``None``. With ``cross_check=True`` and ``ell <= 4``
    the result is compared against the explicit closed forms.
    """
    check_rho(rho)
    _check_ell(ell)
    R = ar1_matrix(rho, ell)
    second = second_moment_max(R)
    if ell <= MAX_ELL_MEAN:
        mean = mean_max(R)
        variance = second - mean * mean
    else:
        mean = variance = None
    if cross_check and ell <= 4:
        cm = closed_form_mean(rho, ell)
        cs = closed_form_second_moment(rho, ell)
        if abs(cm - mean) > CROSS_CHECK_TOL or abs(cs - second) > CROSS_CHECK_TOL:
            raise AssertionError(
                f"general path disagrees with closed form at rho={rho}, ell={ell}: "
                f"mean {mean} vs {cm}, second {second} vs {cs}"
            )
    return MomentResult(ell, mean, second, variance, Method.GENERAL_AFONJA)


def sweep(ell: int, rho_min: float, rho_max: float, step: float) -> list[SweepRow]:
    """Moments on the grid ``rho_min, rho_min + step, ... <= rho_max``.

    Grid points are computed as ``rho_min + k * step`` (not by repeated
    addition) and rounded to 15 decimals to keep values like ``0.3`` exact.
    """
    check_rho(rho_min)
    check_rho(rho_max)
    if not rho_min < rho_max:
        raise InvalidArgument(f"need rho_min < rho_max, got {rho_min}, {rho_max}")
    if not step > 0:
        raise InvalidArgument(f"step must be positive, got {step}")
    count = int(math.floor((rho_max - rho_min) / step + 1e-9)) + 1
    rows = []
    for k in range(count):
        rho = round(rho_min + k * step, 15)
        if rho > rho_max:
            break
        res = moments_ar1(rho, ell)
        rows.append(SweepRow(rho, ell, res.mean, res.second_moment, res.variance))
    return rows


def _objective(ell: int, target: Target):
    if target is Target.MEAN:
        return lambda rho: mean_max(ar1_matrix(rho, ell))
    return lambda rho: second_moment_max(ar1_matrix(rho, ell))


def _derivative(f, x: float, step: float = 1e-3) -> float:
    # five-point central difference, truncation O(step^4)
    return (f(x - 2 * step) - 8 * f(x - step) + 8 * f(x + step) - f(x + 2 * step)) / (12 * step)


def maximize(ell: int, target="mean", grid: int = 64) -> MaximizerResult:
    """Lag-one correlation maximizing E(M_ell) or E(M_ell^2).

    The search scans a coarse grid on ``[-1 + EDGE, 1 - EDGE]``, runs
    bounded Brent minimization on the best bracket, then polishes the point
    to a root of the numerical derivative. The polish is needed because a
    value-only search cannot resolve a flat maximum past about 1e-8.
    """
    target = Target.parse(target)
    if target is Target.MEAN and ell == MAX_ELL_SECOND:
        raise UnsupportedDimension(
            "E(M) for ell=6 needs a 4-variate orthant probability, which has no "
            "elementary closed form; only ell <= 5 is supported"
        )
    hi = MAX_ELL_MEAN if target is Target.MEAN else MAX_ELL_SECOND
    _check_ell(ell, hi)
    if ell == 2:
        raise NoInteriorMaximum("no interior maximum for ell=2")

    calls = 0
    base = _objective(ell, target)

    def f(rho):
        nonlocal calls
        calls += 1
        return base(rho)

    lo, up = -1.0 + EDGE, 1.0 - EDGE
    xs = np.linspace(lo, up, grid + 1)
    vals = np.array([f(x) for x in xs])
    best = int(np.argmax(vals))
    if best == 0 or best == grid:
        raise NoInteriorMaximum(f"maximum of {target.value} for ell={ell} sits at an endpoint")
    a, b = xs[best - 1], xs[best + 1]
    res = optimize.minimize_scalar(
        lambda x: -f(x), bounds=(a, b), method="bounded", options={"xatol": 1e-10}
    )
    x0 = float(res.x)

    def df(x):
        return _derivative(f, x)

    width = 1e-4
    left, right = max(a, x0 - width), min(b, x0 + width)
    if df(left) > 0 > df(right):
        rho_star = optimize.brentq(df, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    else:
        rho_star = x0
    value = f(rho_star)
    return MaximizerResult(ell, target, float(rho_star), value, calls)


def gumbel_location(ell: int) -> GumbelLocation:
    """Location constant ``a_ell`` of the Gumbel limit for Gaussian maxima."""
    if not (isinstance(ell, (int, np.integer)) and ell >= 2):
        raise EllOutOfRange(f"ell must be an integer >= 2, got {ell!r}")
    two_log = 2.0 * math.log(ell)
    root = math.sqrt(two_log)
    a = root - (math.log(math.log(ell)) + math.log(4 * math.pi)) / (2 * root)
    return GumbelLocation(int(ell), a)
