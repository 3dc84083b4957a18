"""
Profile curves in the orbit space of a helicoidal action.

A ProfileCurve is u -> (xi1(u), xi2(u)) with explicit first derivatives. It is
built from sampled Hermite data, from exact callables, or from a radius
function alone (xi2 then comes from quadrature so the curve is arc-length by
construction). All constructors reject curves that are not parametrized by
arc length in the orbital metric.
"""

from typing import Callable, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from common.errors import InconsistentCurve
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.quadrature import CumulativeIntegral
from orbit.action import HelicoidalAction


LOGGER = logging.getLogger("orbit")

Scalar = Callable[[float], float]


class ProfileCurve:
    def __init__(
        self,
        xi1: Scalar,
        xi2: Scalar,
        dxi1: Scalar,
        dxi2: Scalar,
        domain: Tuple[float, float],
        u_grid: Optional[np.ndarray] = None,
    ):
        lo, hi = float(domain[0]), float(domain[1])
        if not lo < hi:
            raise ValueError(f"Bad argument: empty curve domain {domain}")
        self.xi1 = xi1
        self.xi2 = xi2
        self.dxi1 = dxi1
        self.dxi2 = dxi2
        self.domain = (lo, hi)
        self.u_grid = np.linspace(lo, hi, 65) if u_grid is None else np.asarray(u_grid, dtype=float)

    def contains(self, u: float) -> bool:
        return self.domain[0] <= u <= self.domain[1]

    def validate(self, act: HelicoidalAction, tol: Tolerances = DEFAULT_TOLERANCES) -> "ProfileCurve":
        # Local import: reduction depends on this module.
        from orbit.reduction import arclength_residual

        for u in self.u_grid:
            r = self.xi1(u)
            if not r > 0:
                raise InconsistentCurve(f"xi1({u})={r} is not positive")
            res = arclength_residual(act, self, u, tol)
            if abs(res) > tol.arclength:
                raise InconsistentCurve(f"profile is not arc-length at u={u}: residual={res:.3e}")
        LOGGER.debug(f"ProfileCurve.validate: {len(self.u_grid)} samples ok on {self.domain}")
        return self

    # ---------- constructors ----------

    @classmethod
    def from_samples(
        cls,
        act: HelicoidalAction,
        u_grid: Sequence[float],
        xi1: Sequence[float],
        xi2: Sequence[float],
        dxi1: Sequence[float],
        dxi2: Sequence[float],
        tol: Tolerances = DEFAULT_TOLERANCES,
    ) -> "ProfileCurve":
        u = np.asarray(u_grid, dtype=float)
        if u.ndim != 1 or len(u) < 2 or np.any(np.diff(u) <= 0):
            raise ValueError("Bad argument: u_grid must be strictly increasing with at least two samples")
        s1 = CubicHermiteSpline(u, np.asarray(xi1, dtype=float), np.asarray(dxi1, dtype=float))
        s2 = CubicHermiteSpline(u, np.asarray(xi2, dtype=float), np.asarray(dxi2, dtype=float))
        d1, d2 = s1.derivative(), s2.derivative()
        curve = cls(
            lambda v: float(s1(v)),
            lambda v: float(s2(v)),
            lambda v: float(d1(v)),
            lambda v: float(d2(v)),
            (u[0], u[-1]),
            u_grid=u,
        )
        return curve.validate(act, tol)

    @classmethod
    def from_functions(
        cls,
        act: HelicoidalAction,
        xi1: Scalar,
        xi2: Scalar,
        dxi1: Scalar,
        dxi2: Scalar,
        domain: Tuple[float, float],
        n_check: int = 65,
        tol: Tolerances = DEFAULT_TOLERANCES,
    ) -> "ProfileCurve":
        curve = cls(xi1, xi2, dxi1, dxi2, domain, u_grid=np.linspace(domain[0], domain[1], n_check))
        return curve.validate(act, tol)

    @classmethod
    def from_radius(
        cls,
        act: HelicoidalAction,
        xi1: Scalar,
        dxi1: Scalar,
        domain: Tuple[float, float],
        u0: Optional[float] = None,
        n_check: int = 65,
        tol: Tolerances = DEFAULT_TOLERANCES,
    ) -> "ProfileCurve":
        """xi2 is the increasing solution of the arc-length condition, with xi2(u0) = 0."""
        from orbit.reduction import scaling_at

        def dxi2(u: float) -> float:
            r = xi1(u)
            b = scaling_at(act, r, tol)
            c = dxi1(u) / b
            if abs(c) > 1.0:
                raise InconsistentCurve(f"|xi1'|/B={abs(c):.6f} exceeds 1 at u={u}")
            return math.sqrt(1.0 - c * c) * math.hypot(r, act.twist(b, r)) / r

        start = 0.5 * (domain[0] + domain[1]) if u0 is None else u0
        xi2 = CumulativeIntegral(dxi2, start, tol)
        return cls.from_functions(act, xi1, xi2, dxi1, dxi2, domain, n_check=n_check, tol=tol)
