# oracle/surfaces.py
from typing import Optional, Tuple

from bcv.space import CylPoint
from bour.chart import NaturalChart
from orbit.action import HelicoidalAction
from orbit.profile import ProfileCurve
from oracle.surface_interface import ISurfaceChart


class NaturalSurface(ISurfaceChart):
    """Surface of a natural chart, parametrized by (u, t)."""

    def __init__(
        self,
        chart: NaturalChart,
        u_range: Optional[Tuple[float, float]] = None,
        t_range: Tuple[float, float] = (0.0, 1.0),
    ):
        super().__init__(chart.space, chart.a, u_range or chart.domain, t_range)
        self.chart = chart
        self.U = chart.seed.U

    def cylindrical(self, u: float, t: float) -> CylPoint:
        theta = self.chart.theta(u, t)
        return CylPoint(self.chart.xi1(u), theta, self.chart.xi2(u) + self.a * theta)

    def profile_slope(self, u: float) -> float:
        return self.chart.dxi2(u)


class ProfileSurface(ISurfaceChart):
    """Surface swept by a profile curve, in the raw (u, theta) parametrization."""

    def __init__(
        self,
        act: HelicoidalAction,
        curve: ProfileCurve,
        u_range: Optional[Tuple[float, float]] = None,
        t_range: Tuple[float, float] = (0.0, 1.0),
    ):
        super().__init__(act.space, act.a, u_range or curve.domain, t_range)
        self.act = act
        self.curve = curve

    def cylindrical(self, u: float, t: float) -> CylPoint:
        return CylPoint(self.curve.xi1(u), t, self.curve.xi2(u) + self.a * t)

    def profile_slope(self, u: float) -> float:
        return self.curve.dxi2(u)
