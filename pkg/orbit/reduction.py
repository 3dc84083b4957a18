"""
Geometry of the orbit space of a helicoidal action and the reduced mean curvature.

For a profile curve parametrized by arc length, sigma is the angle it makes
with d/d xi1:

    xi1' = B cos(sigma),    xi2' = sin(sigma) sqrt(xi1^2 + (aB - tau xi1^2)^2) / xi1

and the mean curvature (trace of the shape operator) of the swept surface is

    H = sigma' + (1/xi1 - kappa xi1 / 4) sin(sigma)

which equals k_g - D_n ln(omega) in the orbital metric.
"""

from typing import Tuple
import logging
import math

import numpy as np

from bcv.metric import scaling_factor
from common.errors import DomainError, InconsistentCurve, StencilOutOfDomain
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.differences import diff_central
from orbit.action import HelicoidalAction
from orbit.profile import ProfileCurve


LOGGER = logging.getLogger("orbit")


def scaling_at(act: HelicoidalAction, xi1: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return scaling_factor(act.space, xi1 * xi1, tol)


def orbital_metric(act: HelicoidalAction, xi1: float, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[float, float]:
    if not xi1 > 0:
        raise DomainError(f"orbital_metric: xi1 must be positive, got {xi1}")
    b = scaling_at(act, xi1, tol)
    w = act.twist(b, xi1)
    return 1.0 / (b * b), xi1 * xi1 / (xi1 * xi1 + w * w)


def volume_omega(act: HelicoidalAction, xi1: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Length of the Killing field X along the orbit through radius xi1."""
    if xi1 < 0:
        raise DomainError(f"volume_omega: xi1 must be non-negative, got {xi1}")
    b = scaling_at(act, xi1, tol)
    return math.hypot(xi1, act.twist(b, xi1)) / b


def induced_metric(
    act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[float, float, float]:
    r, d2 = curve.xi1(u), curve.dxi2(u)
    b = scaling_at(act, r, tol)
    omega = volume_omega(act, r, tol)
    if omega == 0.0:
        raise DomainError(f"induced_metric: orbit degenerates at u={u}")
    w = act.twist(b, r)
    e = 1.0 + (d2 * w / (b * omega)) ** 2
    f = d2 * w / b
    return e, f, omega * omega


def arclength_residual(act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    r, d1, d2 = curve.xi1(u), curve.dxi1(u), curve.dxi2(u)
    b = scaling_at(act, r, tol)
    w = act.twist(b, r)
    return d1 * d1 / (b * b) + r * r * d2 * d2 / (r * r + w * w) - 1.0


def sigma_angle(act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    r, d1, d2 = curve.xi1(u), curve.dxi1(u), curve.dxi2(u)
    b = scaling_at(act, r, tol)
    cos_s = d1 / b
    sin_s = r * d2 / math.hypot(r, act.twist(b, r))
    if abs(cos_s * cos_s + sin_s * sin_s - 1.0) > tol.arclength:
        raise InconsistentCurve(f"sigma_angle: cos={cos_s:.6f} sin={sin_s:.6f} disagree at u={u}")
    return math.atan2(sin_s, cos_s)


def sigma_samples(act: HelicoidalAction, curve: ProfileCurve, us, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """sigma along increasing abscissae, unwrapped so there are no 2 pi jumps."""
    return np.unwrap([sigma_angle(act, curve, u, tol) for u in us])


def _sigma_prime(act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances) -> float:
    """d sigma / du by a Richardson central difference of sigma itself.

    The step is tol.fd_first, halved down to tol.fd_min when the stencil leaves
    the profile domain. No sample grid of the profile is involved, so the
    accuracy follows the closed-form curve rather than any mesh spacing.
    """
    center = sigma_angle(act, curve, u, tol)

    def local(v: float) -> float:
        if not curve.contains(v):
            raise StencilOutOfDomain(f"u={v} outside profile domain {curve.domain}")
        jump = sigma_angle(act, curve, v, tol) - center
        return center + math.remainder(jump, 2.0 * math.pi)

    return diff_central(local, u, order=1, h=tol.fd_first, h_min=tol.fd_min)


def geodesic_curvature(act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    r = curve.xi1(u)
    b = scaling_at(act, r, tol)
    w = act.twist(b, r)
    sigma = sigma_angle(act, curve, u, tol)
    dg22 = diff_central(lambda s: orbital_metric(act, s, tol)[1], r, order=1, h=tol.fd_first, h_min=tol.fd_min)
    return b * (r * r + w * w) * dg22 * math.sin(sigma) / (2.0 * r * r) + _sigma_prime(act, curve, u, tol)


def normal_log_volume_derivative(
    act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """D_n ln(omega) along the unit normal of the profile in the orbital metric."""
    r = curve.xi1(u)
    b = scaling_at(act, r, tol)
    sigma = sigma_angle(act, curve, u, tol)
    dlog = diff_central(lambda s: math.log(volume_omega(act, s, tol)), r, order=1, h=tol.fd_first, h_min=tol.fd_min)
    return -b * math.sin(sigma) * dlog


def mean_curvature_reduced(act: HelicoidalAction, curve: ProfileCurve, u: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    r = curve.xi1(u)
    sigma = sigma_angle(act, curve, u, tol)
    return _sigma_prime(act, curve, u, tol) + (1.0 / r - 0.25 * act.space.kappa * r) * math.sin(sigma)
