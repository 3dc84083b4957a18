"""
Rotation surfaces (a = 0) with a prescribed metric du^2 + U^2 dt^2.

The one-parameter family indexed by n reduces, depending on the space, to:

    kappa = 4 tau^2 != 0:  xi1 = nU / sqrt(1 - tau^2 n^2 U^2)
    tau = 0:               xi1 = 2nU / (1 + sqrt(1 - kappa n^2 U^2)),   theta = t/n
    kappa = 0:             xi1 = sqrt(2) nU / sqrt(1 + sqrt(Delta))
    otherwise:             xi1 = 2nU / sqrt(2(1 + sqrt(Delta)) - kappa n^2 U^2)

with Delta = 1 + (4 tau^2 - kappa) n^2 U^2.
"""

from functools import lru_cache
from typing import NamedTuple, Optional, Tuple
import logging
import math

from bcv.metric import classify
from bcv.space import BcvSpace, SpaceClass
from bour.chart import ChartIntegrands, NaturalChart, domain_of_validity
from bour.profile_interface import IMetricProfile
from bour.seed import BourSeed
from common.errors import DegenerateRadius, NegativeDiscriminant, NegativeRadicand
from common.tolerances import DEFAULT_TOLERANCES, Tolerances


LOGGER = logging.getLogger("bour")


class RotationState(NamedTuple):
    xi1: float
    dxi1: float
    dxi2: float
    dtheta0: float


def _root(value: float, tol: Tolerances, what: str) -> float:
    if value < 0.0:
        if value <= -tol.radicand_eps:
            raise NegativeRadicand(f"{what}={value:.3e} is negative")
        return 0.0
    return math.sqrt(value)


class RotationIntegrands(ChartIntegrands):
    def __init__(self, space: BcvSpace, n: float, U: IMetricProfile, tol: Tolerances = DEFAULT_TOLERANCES):
        self.space = space
        self.n = abs(n)
        self.U = U
        self.tol = tol
        k, t = space.kappa, space.tau
        if classify(space, tol) is SpaceClass.SPHERE:
            self.regime = "sphere"
        elif t == 0.0:
            self.regime = "product"
        elif k == 0.0:
            self.regime = "heisenberg"
        else:
            self.regime = "general"
        self.state = lru_cache(maxsize=65536)(self._compute)

    def _compute(self, u: float) -> RotationState:
        k, t, n = self.space.kappa, self.space.tau, self.n
        big_u, du = self.U.value(u), self.U.first(u)
        if not big_u > 0:
            raise DegenerateRadius(f"U({u})={big_u} is not positive")
        x, dx = n * big_u, n * du
        delta = 1.0 + (4.0 * t * t - k) * x * x
        if delta < 0.0:
            raise NegativeDiscriminant(f"Delta({u})={delta:.3e} is negative")
        s = math.sqrt(delta)

        if self.regime == "sphere":
            q = 1.0 - t * t * x * x
            if q <= 0.0:
                raise NegativeDiscriminant(f"1 - tau^2 n^2 U^2={q:.3e} is not positive at u={u}")
            root = _root(1.0 - n * n * (t * t * big_u * big_u + du * du), self.tol, f"radicand at u={u}")
            return RotationState(x / math.sqrt(q), dx / q**1.5, root / q, t * root / q)

        if self.regime == "product":
            root = _root((1.0 - n * n * (k * big_u * big_u + du * du)) / delta, self.tol, f"radicand at u={u}")
            return RotationState(2.0 * x / (1.0 + s), 2.0 * dx / (s * (1.0 + s)), root, 0.0)

        if self.regime == "heisenberg":
            root = _root(2.0 / (1.0 + s) - n * n * du * du / delta, self.tol, f"radicand at u={u}")
            xi1 = math.sqrt(2.0) * x / math.sqrt(1.0 + s)
            dxi1 = dx * math.sqrt(1.0 + s) / (math.sqrt(2.0) * s)
            return RotationState(xi1, dxi1, 0.5 * (1.0 + s) * root, t * root)

        d = 2.0 * (1.0 + s) - k * x * x
        if d <= 0.0:
            raise NegativeDiscriminant(f"2(1 + sqrt(Delta)) - kappa n^2 U^2={d:.3e} is not positive at u={u}")
        xi1 = 2.0 * x / math.sqrt(d)
        b = 1.0 + k * x * x / d
        root = _root(xi1 * xi1 - (x * dx * b) ** 2 / delta, self.tol, f"radicand at u={u}")
        return RotationState(xi1, b * b * x * dx / (s * xi1), x * b / (xi1 * xi1) * root, t / x * root)

    def xi1(self, u: float) -> float:
        return self.state(u).xi1

    def dxi1(self, u: float) -> float:
        return self.state(u).dxi1

    def dxi2(self, u: float) -> float:
        return self.state(u).dxi2

    def dtheta0(self, u: float) -> float:
        return self.state(u).dtheta0


def rotation_chart(
    space: BcvSpace,
    n: float,
    U: IMetricProfile,
    u_domain: Optional[Tuple[float, float]] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> NaturalChart:
    seed = BourSeed(U=U, m=n, a=0.0, u_domain=u_domain)
    domain = domain_of_validity(space, seed, tol)
    integrands = RotationIntegrands(space, n, U, tol)
    chart = NaturalChart(space, seed, domain, integrands, tol, label=f"rotation/{integrands.regime}")
    LOGGER.info(f"rotation_chart: {chart!r}")
    return chart
