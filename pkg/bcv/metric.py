"""
Metric of a BCV space in Cartesian and cylindrical coordinates.

    g = (dx^2 + dy^2) / B^2 + (dz + tau (y dx - x dy) / B)^2,   B = 1 + kappa (x^2 + y^2) / 4

Tangent vectors are always returned as coordinate components (rows of a
numpy array), whether they were defined through the orthonormal frame or not.
"""

import logging

import numpy as np

from bcv.space import AmbientPoint, BcvSpace, CylPoint, SpaceClass
from common.errors import DomainError
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.differences import diff_central


LOGGER = logging.getLogger("bcv")


def scaling_factor(space: BcvSpace, rsq: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    if rsq < 0:
        raise ValueError(f"Bad argument: rsq must be non-negative, got {rsq}")
    b = 1.0 + 0.25 * space.kappa * rsq
    if b < tol.domain_guard:
        raise DomainError(f"{space}: B={b:.3e} at r^2={rsq} is outside the metric domain")
    return b


def metric_cartesian(space: BcvSpace, p: AmbientPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    x, y, _ = p
    b = scaling_factor(space, x * x + y * y, tol)
    alpha = space.tau * y / b
    beta = -space.tau * x / b
    inv_b2 = 1.0 / (b * b)
    return np.array(
        [
            [inv_b2 + alpha * alpha, alpha * beta, alpha],
            [alpha * beta, inv_b2 + beta * beta, beta],
            [alpha, beta, 1.0],
        ]
    )


def metric_cylindrical(space: BcvSpace, p: CylPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Components in (r, theta, z); g_thth vanishes on the axis, so keep r >= tol.r_min to invert."""
    if p.r < 0:
        raise ValueError(f"Bad argument: r must be non-negative, got {p.r}")
    r2 = p.r * p.r
    b = scaling_factor(space, r2, tol)
    g_tz = -space.tau * r2 / b
    return np.array(
        [
            [1.0 / (b * b), 0.0, 0.0],
            [0.0, r2 * (1.0 + space.tau**2 * r2) / (b * b), g_tz],
            [0.0, g_tz, 1.0],
        ]
    )


def orthonormal_frame(space: BcvSpace, p: AmbientPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Rows E1 = B d_x - tau y d_z, E2 = B d_y + tau x d_z, E3 = d_z."""
    x, y, _ = p
    b = scaling_factor(space, x * x + y * y, tol)
    t = space.tau
    return np.array([[b, 0.0, -t * y], [0.0, b, t * x], [0.0, 0.0, 1.0]])


def christoffels(space: BcvSpace, p: AmbientPoint, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Gamma[k, i, j] from Richardson-extrapolated central differences of metric_cartesian.

    :raises StencilOutOfDomain: when the stencil cannot fit inside the domain
    """
    base = np.asarray(p, dtype=float)
    g = metric_cartesian(space, p, tol)
    dg = np.empty((3, 3, 3))
    for l in range(3):
        def shifted(s: float, l=l) -> np.ndarray:
            q = base.copy()
            q[l] += s
            return metric_cartesian(space, AmbientPoint(*q), tol)

        dg[l] = diff_central(shifted, 0.0, order=1, h=tol.fd_christoffel, h_min=tol.fd_min)
    # term[i, j, l] = d_i g_jl + d_j g_il - d_l g_ij
    term = dg + np.einsum("jil->ijl", dg) - np.einsum("lij->ijl", dg)
    gamma = 0.5 * np.einsum("kl,ijl->kij", np.linalg.inv(g), term)
    return 0.5 * (gamma + gamma.transpose(0, 2, 1))


def classify(space: BcvSpace, tol: Tolerances = DEFAULT_TOLERANCES) -> SpaceClass:
    """Label a BCV space by its geometry.

    The exact lines tau = 0 and kappa = 0 take precedence over the
    ``|kappa - 4 tau^2| <= case_eps`` band, so a tiny pitch over a flat base is
    still Heisenberg and a tiny curvature without pitch is still a product.
    """
    k, t = space.kappa, space.tau
    if k == 0.0 and t == 0.0:
        return SpaceClass.EUCLIDEAN
    if t == 0.0:
        return SpaceClass.SPHERE_PRODUCT if k > 0 else SpaceClass.HYPERBOLIC_PRODUCT
    if k == 0.0:
        return SpaceClass.HEISENBERG
    if abs(k - 4.0 * t * t) <= tol.case_eps:
        return SpaceClass.SPHERE
    return SpaceClass.SU2 if k > 0 else SpaceClass.SL2R_COVER
