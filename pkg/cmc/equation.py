"""
The mean curvature equation of a Bour chart and the checks around its first integral.

With x = mU, p = 1 - 2a tau, lambda = 4 tau^2 - kappa and
Delta = p^2 + (x^2 - a^2) lambda, a chart has constant mean curvature H iff

    H sqrt(xi1^2 - m^4 B^2 U^2 U'^2 / Delta) = 2 - B - m^2 B (U U' / sqrt(Delta))'

The substitution y^2 = (x^2 - a^2)((1 + sqrt(Delta))^2 - 4 tau^2 x^2) / (p + sqrt(Delta))^2
- x^2 x'^2 / Delta turns it into y' = H x x' / sqrt(Delta).
"""

from typing import Tuple
import logging
import math

from bcv.metric import scaling_factor
from bcv.space import BcvSpace
from bour.seed import BourSeed
from cmc.constants import cmc_constants
from common.errors import DegenerateRadius, NegativeDiscriminant, NegativeRadicand
from common.tolerances import DEFAULT_TOLERANCES, Tolerances


LOGGER = logging.getLogger("cmc")


def _clamped_root(value: float, tol: Tolerances, what: str) -> float:
    if value < 0.0:
        if value <= -tol.radicand_eps:
            raise NegativeRadicand(f"{what}={value:.3e} is negative")
        return 0.0
    return math.sqrt(value)


def _seed_values(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances) -> Tuple[float, float, float, float, float]:
    """(m, U, U', Delta, sqrt(Delta)) with m > 0."""
    m = abs(seed.m)
    big_u, du = seed.U.value(u), seed.U.first(u)
    if not big_u > 0:
        raise DegenerateRadius(f"U({u})={big_u} is not positive")
    p = 1.0 - 2.0 * seed.a * space.tau
    x = m * big_u
    d = p * p + (x * x - seed.a * seed.a) * (4.0 * space.tau**2 - space.kappa)
    if d <= 0.0:
        raise NegativeDiscriminant(f"Delta({u})={d:.3e} is not positive")
    return m, big_u, du, d, math.sqrt(d)


def cmc_residual(space: BcvSpace, seed: BourSeed, H: float, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    k, t, a = space.kappa, space.tau, seed.a
    m, big_u, du, d, sd = _seed_values(space, seed, u, tol)
    d2u = seed.U.second(u)
    x = m * big_u
    den = (1.0 + sd) ** 2 - 4.0 * t * t * x * x
    if den <= 0.0:
        raise NegativeDiscriminant(f"(1 + sqrt(Delta))^2 - 4 tau^2 m^2 U^2={den:.3e} at u={u}")
    r2 = 4.0 * (x * x - a * a) / den
    b = scaling_factor(space, max(r2, 0.0), tol)
    lhs = H * _clamped_root(r2 - (m * m * b * big_u * du) ** 2 / d, tol, f"radicand at u={u}")
    lam = 4.0 * t * t - k
    flux = (du * du + big_u * d2u) / sd - lam * (m * big_u * du) ** 2 / (d * sd)
    return lhs - (2.0 - b - m * m * b * flux)


def first_integral_check(
    space: BcvSpace, seed: BourSeed, H: float, c: float, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """y from the coordinate change minus y from the integrated first integral."""
    t, a = space.tau, seed.a
    m, big_u, du, d, sd = _seed_values(space, seed, u, tol)
    p = 1.0 - 2.0 * a * t
    x, dx = m * big_u, m * du
    y_sq = (x * x - a * a) * ((1.0 + sd) ** 2 - 4.0 * t * t * x * x) / (p + sd) ** 2 - (x * dx) ** 2 / d
    y_tc = _clamped_root(y_sq, tol, f"first-integral radicand at u={u}")
    lam = 4.0 * t * t - space.kappa
    if abs(lam) <= tol.case_eps:
        y_sol = (H * x * x + c) / (2.0 * sd)
    else:
        y_sol = (H * sd + c) / lam
    # y_tc is a square root, so it carries no sign. For H = 0 the family depends on
    # c only through c^2, so c and -c give the same U and only |y_sol| can be matched.
    # For H != 0 the sign is fixed and a flipped c shows up in the residual.
    return y_tc - (abs(y_sol) if H == 0.0 else y_sol)


def z_equation_residual(
    space: BcvSpace, seed: BourSeed, H: float, c: float, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """z'^2 + (H^2 + 4 tau^2) z^2 - 2 c1 z - c2 for z = m^2 U^2 (kappa = 4 tau^2)."""
    const = cmc_constants(space, seed.a, H, c)
    m = abs(seed.m)
    big_u, du = seed.U.value(u), seed.U.first(u)
    z = m * m * big_u * big_u
    dz = 2.0 * m * m * big_u * du
    return dz * dz - (-(H * H + 4.0 * space.tau**2) * z * z + 2.0 * const.c1 * z + const.c2)


def sqrt_delta_residual(
    space: BcvSpace, seed: BourSeed, H: float, c: float, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """w'^2 + (H^2 + kappa) w^2 - 2 b1 w - b for w = sqrt(Delta) (kappa != 4 tau^2)."""
    const = cmc_constants(space, seed.a, H, c)
    m, big_u, du, d, sd = _seed_values(space, seed, u, tol)
    lam = 4.0 * space.tau**2 - space.kappa
    dw = lam * m * m * big_u * du / sd
    return dw * dw - (-(H * H + space.kappa) * d + 2.0 * const.b1 * sd + const.b)
