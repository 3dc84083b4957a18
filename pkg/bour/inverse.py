# bour/inverse.py
from typing import Tuple
import logging

from bour.profiles import CallableProfile
from common.errors import DegenerateOrbit
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.quadrature import CumulativeIntegral
from orbit.action import HelicoidalAction
from orbit.profile import ProfileCurve
from orbit.reduction import scaling_at, volume_omega


LOGGER = logging.getLogger("bour")


def natural_from_helicoidal(
    act: HelicoidalAction, curve: ProfileCurve, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[CallableProfile, CumulativeIntegral]:
    """
    Natural parameters of the surface swept by an arc-length profile.

    :return: (U, t_shift) with U(u) = omega(xi1(u)) and t = theta + t_shift(u)
             giving the metric du^2 + U(u)^2 dt^2; t_shift vanishes at the
             middle of the curve domain.
    """
    omega = lambda u: volume_omega(act, curve.xi1(u), tol)
    for u in curve.u_grid:
        if not omega(u) > 0.0:
            raise DegenerateOrbit(f"volume function vanishes at u={u}")

    def gauge(u: float) -> float:
        r = curve.xi1(u)
        b = scaling_at(act, r, tol)
        w = omega(u)
        return curve.dxi2(u) * act.twist(b, r) / (b * w * w)

    lo, hi = curve.domain
    U = CallableProfile(omega, curve.domain, tol=tol)
    t_shift = CumulativeIntegral(gauge, 0.5 * (lo + hi), tol)
    LOGGER.info(f"natural_from_helicoidal: a={act.a} domain={curve.domain} U(mid)={omega(0.5 * (lo + hi)):.6g}")
    return U, t_shift
