"""
Natural parametrization of the Bour family in a BCV space.

For a seed (U, m, a), with x = mU (m > 0 after normalization), p = 1 - 2 a tau
and Delta = p^2 + (x^2 - a^2)(4 tau^2 - kappa):

    xi1     = 2 sqrt( (x^2 - a^2) / ((1 + sqrt(Delta))^2 - 4 tau^2 x^2) )
    xi2'    = x B / xi1^2 * sqrt(rad)
    theta0' = ((4 tau - a kappa) xi1^2 - 4a) / (4 x xi1^2) * sqrt(rad)
    rad     = xi1^2 - (x x' B)^2 / Delta

and theta(u, t) = t/m + theta0(u). The swept surface has first fundamental
form du^2 + U(u)^2 dt^2 for every admissible (m, a).
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Callable, NamedTuple, Tuple
import logging
import math

import numpy as np

from bcv.metric import scaling_factor
from bcv.space import BcvSpace
from bour.seed import BourSeed
from common.errors import (
    BcvError,
    DegenerateRadius,
    EmptyDomain,
    NegativeDiscriminant,
    NegativeRadicand,
)
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.quadrature import CumulativeIntegral
from numerics.roots import bracket_root
from orbit.action import HelicoidalAction
from orbit.profile import ProfileCurve


LOGGER = logging.getLogger("bour")

# Radicands within this many ulps of their terms are cancellation noise.
CANCELLATION_ULPS = 64.0 * float(np.finfo(float).eps)


class ChartState(NamedTuple):
    """Everything the integrands need at one abscissa."""

    x: float
    dx: float
    delta: float
    xi1: float
    b: float
    root_rad: float


def _clamp(value: float, eps: float, error: type, what: str) -> float:
    if value >= 0.0:
        return value
    if value > -eps:
        return 0.0
    raise error(f"{what}={value:.3e} is negative")


def _xi2_radicand(r2: float, lift2: float, scale: float, eps: float, what: str) -> float:
    value = r2 - lift2
    if abs(value) <= CANCELLATION_ULPS * scale:
        return 0.0
    return _clamp(value, eps, NegativeRadicand, what)


def _scaled_u(seed: BourSeed, u: float) -> Tuple[float, float]:
    m = abs(seed.m)
    value = seed.U.value(u)
    if not value > 0:
        raise DegenerateRadius(f"U({u})={value} is not positive")
    return m * value, m * seed.U.first(u)


def delta(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    x, _ = _scaled_u(seed, u)
    p = 1.0 - 2.0 * seed.a * space.tau
    d = p * p + (x * x - seed.a * seed.a) * (4.0 * space.tau**2 - space.kappa)
    return _clamp(d, tol.radicand_eps, NegativeDiscriminant, f"Delta({u})")


def _xi1_from(space: BcvSpace, a: float, x: float, d: float, tol: Tolerances) -> float:
    num = x * x - a * a
    den = (1.0 + math.sqrt(d)) ** 2 - 4.0 * space.tau**2 * x * x
    if abs(num) <= tol.radicand_eps and abs(den) <= tol.radicand_eps:
        raise DegenerateRadius(f"xi1 is 0/0: m^2U^2 - a^2={num:.3e}, denominator={den:.3e}")
    if den <= 0.0:
        raise NegativeDiscriminant(f"(1 + sqrt(Delta))^2 - 4 tau^2 m^2 U^2={den:.3e} is not positive")
    num = _clamp(num, tol.radicand_eps, NegativeDiscriminant, "m^2U^2 - a^2")
    return 2.0 * math.sqrt(num / den)


def xi1_from_seed(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    x, _ = _scaled_u(seed, u)
    return _xi1_from(space, seed.a, x, delta(space, seed, u, tol), tol)


def chart_state(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> ChartState:
    x, dx = _scaled_u(seed, u)
    d = delta(space, seed, u, tol)
    r = _xi1_from(space, seed.a, x, d, tol)
    b = scaling_factor(space, r * r, tol)
    lift = x * dx * b
    if d > 0.0:
        lift2 = lift * lift / d
    elif lift == 0.0:
        lift2 = 0.0
    else:
        raise NegativeDiscriminant(f"Delta vanishes at u={u} while (mU)(mU)' != 0")
    rad = _xi2_radicand(r * r, lift2, x * x + seed.a**2 + lift2, tol.radicand_eps, f"xi2 radicand at u={u}")
    return ChartState(x, dx, d, r, b, math.sqrt(rad))


def euclidean_state(seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> ChartState:
    """Classical Bour formulas in R^3 (kappa = tau = 0): Delta = B = 1."""
    x, dx = _scaled_u(seed, u)
    r = math.sqrt(_clamp(x * x - seed.a * seed.a, tol.radicand_eps, NegativeDiscriminant, "m^2U^2 - a^2"))
    lift = x * dx
    lift2 = lift * lift
    rad = _xi2_radicand(r * r, lift2, x * x + seed.a**2 + lift2, tol.radicand_eps, f"xi2 radicand at u={u}")
    return ChartState(x, dx, 1.0, r, 1.0, math.sqrt(rad))


# ---------- integrands ----------


def dxi1_of(state: ChartState) -> float:
    if state.xi1 == 0.0:
        raise DegenerateRadius("xi1 vanishes, xi1' is undefined on the axis")
    if state.delta == 0.0:
        if state.dx == 0.0:
            # sqrt(Delta) behaves like |u - u*| here, so xi1 has a corner.
            raise DegenerateRadius(f"Delta and (mU)' vanish together at mU={state.x}, xi1' is undefined")
        raise NegativeDiscriminant(f"Delta vanishes at mU={state.x} while (mU)' != 0")
    return state.b * state.b * state.x * state.dx / (math.sqrt(state.delta) * state.xi1)


def dxi2_of(state: ChartState) -> float:
    if state.root_rad == 0.0:
        return 0.0
    return state.x * state.b / (state.xi1 * state.xi1) * state.root_rad


def dtheta0_of(space: BcvSpace, a: float, state: ChartState) -> float:
    if state.root_rad == 0.0:
        return 0.0
    r2 = state.xi1 * state.xi1
    return ((4.0 * space.tau - a * space.kappa) * r2 - 4.0 * a) / (4.0 * state.x * r2) * state.root_rad


class ChartIntegrands(ABC):
    """xi1 with its derivative and the integrands of xi2 and theta0."""

    @abstractmethod
    def xi1(self, u: float) -> float:
        pass

    @abstractmethod
    def dxi1(self, u: float) -> float:
        pass

    @abstractmethod
    def dxi2(self, u: float) -> float:
        pass

    @abstractmethod
    def dtheta0(self, u: float) -> float:
        pass


class BourIntegrands(ChartIntegrands):
    def __init__(self, space: BcvSpace, seed: BourSeed, tol: Tolerances = DEFAULT_TOLERANCES):
        self.space = space
        self.seed = seed.normalized()
        self.tol = tol
        if space.kappa == 0.0 and space.tau == 0.0:
            compute = lambda u: euclidean_state(self.seed, u, tol)
        else:
            compute = lambda u: chart_state(space, self.seed, u, tol)
        self.state = lru_cache(maxsize=65536)(compute)

    def xi1(self, u: float) -> float:
        return self.state(u).xi1

    def dxi1(self, u: float) -> float:
        return dxi1_of(self.state(u))

    def dxi2(self, u: float) -> float:
        return dxi2_of(self.state(u))

    def dtheta0(self, u: float) -> float:
        return dtheta0_of(self.space, self.seed.a, self.state(u))


def xi2(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """xi2(u) with xi2 = 0 at the midpoint of the validity domain."""
    return _shared_chart(space, seed, tol).xi2(u)


def theta0(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return _shared_chart(space, seed, tol).theta0(u)


class NaturalChart:
    """
    Immutable natural parametrization (u, t) -> (xi1(u), theta(u, t), xi2(u)).

    xi2 and theta0 are cumulative quadratures from u0; per-u values are memoized.
    """

    def __init__(
        self,
        space: BcvSpace,
        seed: BourSeed,
        domain: Tuple[float, float],
        integrands: ChartIntegrands,
        tol: Tolerances = DEFAULT_TOLERANCES,
        label: str = "bour",
    ):
        self.space = space
        self.m = seed.m
        self.seed = seed.normalized()
        self.a = seed.a
        self.domain = (float(domain[0]), float(domain[1]))
        self.u0 = 0.5 * (self.domain[0] + self.domain[1])
        self.integrands = integrands
        self.tol = tol
        self.label = label
        self._xi2 = lru_cache(maxsize=65536)(CumulativeIntegral(integrands.dxi2, self.u0, tol))
        self._theta0 = lru_cache(maxsize=65536)(CumulativeIntegral(integrands.dtheta0, self.u0, tol))

    @property
    def action(self) -> HelicoidalAction:
        return HelicoidalAction(space=self.space, a=self.a)

    def U(self, u: float) -> float:
        return self.seed.U.value(u)

    def xi1(self, u: float) -> float:
        return self.integrands.xi1(float(u))

    def dxi1(self, u: float) -> float:
        return self.integrands.dxi1(float(u))

    def dxi2(self, u: float) -> float:
        return self.integrands.dxi2(float(u))

    def dtheta0(self, u: float) -> float:
        return self.integrands.dtheta0(float(u))

    def xi2(self, u: float) -> float:
        return self._xi2(float(u))

    def theta0(self, u: float) -> float:
        return self._theta0(float(u))

    def theta(self, u: float, t: float) -> float:
        return t / self.m + self.theta0(u)

    def profile_curve(self) -> ProfileCurve:
        curve = ProfileCurve(self.xi1, self.xi2, self.dxi1, self.dxi2, self.domain)
        return curve.validate(self.action, self.tol)

    def __repr__(self) -> str:
        return f"NaturalChart({self.label}, {self.space}, m={self.m:g}, a={self.a:g}, domain={self.domain})"


# ---------- validity domain ----------


def _is_valid(space: BcvSpace, seed: BourSeed, u: float, tol: Tolerances) -> bool:
    try:
        chart_state(space, seed, u, tol)
        return True
    except (BcvError, ValueError, ZeroDivisionError, OverflowError):
        return False


def _runs(flags: np.ndarray):
    start = None
    for i, flag in enumerate(flags):
        if flag and start is None:
            start = i
        if not flag and start is not None:
            yield start, i - 1
            start = None
    if start is not None:
        yield start, len(flags) - 1


def _refine(valid: Callable[[float], bool], inside: float, outside: float, tol: Tolerances) -> float:
    edge = bracket_root(valid, inside, outside, tol.bisection)
    step = math.copysign(tol.bisection, inside - outside)
    while not valid(edge):
        edge += step
    return edge


def domain_of_validity(space: BcvSpace, seed: BourSeed, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    """Largest subinterval of the seed domain around its midpoint where the chart exists."""
    seed = seed.normalized()
    lo, hi = seed.domain
    grid = np.linspace(lo, hi, tol.domain_scan + 1)
    valid = lambda u: _is_valid(space, seed, u, tol)
    flags = np.array([valid(u) for u in grid])
    runs = list(_runs(flags))
    if not runs:
        raise EmptyDomain(f"{space}: no admissible u in {seed.domain} for m={seed.m}, a={seed.a}")
    mid = int(np.argmin(np.abs(grid - 0.5 * (lo + hi))))
    containing = [r for r in runs if r[0] <= mid <= r[1]]
    i, j = containing[0] if containing else max(runs, key=lambda r: r[1] - r[0])
    start = grid[i] if i == 0 else _refine(valid, grid[i], grid[i - 1], tol)
    stop = grid[j] if j == len(grid) - 1 else _refine(valid, grid[j], grid[j + 1], tol)
    if not start < stop:
        raise EmptyDomain(f"{space}: admissible set around u={grid[i]} is a single point")
    LOGGER.debug(f"domain_of_validity: {space} m={seed.m} a={seed.a} -> ({start}, {stop})")
    return float(start), float(stop)


def build_chart(space: BcvSpace, seed: BourSeed, tol: Tolerances = DEFAULT_TOLERANCES) -> NaturalChart:
    domain = domain_of_validity(space, seed, tol)
    chart = NaturalChart(space, seed, domain, BourIntegrands(space, seed, tol), tol)
    LOGGER.info(f"build_chart: {chart!r} u0={chart.u0}")
    return chart


# Seeds, spaces and tolerances are hashable, so one-off xi2/theta0 calls share charts.
_shared_chart = lru_cache(maxsize=32)(build_chart)
