"""
Extrinsic curvature of embedded surfaces, computed from the ambient metric only.

Tangents and second derivatives of the Cartesian embedding come from central
differences, the Levi-Civita connection from bcv.metric.christoffels. Nothing
here uses the reduction formula or the Bour formulas, so the results can be
compared against both.

Mean curvature is the trace of the shape operator (sum of principal
curvatures). The default normal points away from the axis; with
orientation="profile" it is flipped to agree with the normal of the profile
curve in the orbit space.
"""

from typing import Iterable, Tuple
import logging
import math

import numpy as np

from bcv.metric import christoffels, metric_cartesian
from bcv.space import AmbientPoint, BcvSpace
from bour.profile_interface import IMetricProfile
from common.errors import DegenerateImmersion
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.differences import diff_central
from oracle.surface_interface import ISurfaceChart


LOGGER = logging.getLogger("oracle")

# Five-point central stencils.
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def embed(space: BcvSpace, chart: ISurfaceChart, u: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES) -> AmbientPoint:
    p = chart.cartesian(u, t)
    # Raises DomainError outside the metric domain.
    metric_cartesian(space, p, tol)
    return p


def tangents(chart: ISurfaceChart, u: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[np.ndarray, np.ndarray]:
    psi_u = diff_central(lambda s: chart.position(s, t), u, order=1, h=tol.fd_first, h_min=tol.fd_min)
    psi_t = diff_central(lambda s: chart.position(u, s), t, order=1, h=tol.fd_first, h_min=tol.fd_min)
    return psi_u, psi_t


def first_form_numeric(
    space: BcvSpace, chart: ISurfaceChart, u: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[float, float, float]:
    g = metric_cartesian(space, embed(space, chart, u, t, tol), tol)
    psi_u, psi_t = tangents(chart, u, t, tol)
    return float(psi_u @ g @ psi_u), float(psi_u @ g @ psi_t), float(psi_t @ g @ psi_t)


def unit_normal(
    space: BcvSpace,
    chart: ISurfaceChart,
    u: float,
    t: float,
    orientation: str = "outward",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """
    g-unit vector orthogonal to both tangents.

    outward: g(n, d_r) >= 0, falling back to g(n, d_z) >= 0 where d_r is tangent.
    profile: the normal of the profile curve, g(n, d_r) of sign opposite to xi2'.
    """
    if orientation not in ("outward", "profile"):
        raise ValueError(f"Bad argument: orientation must be 'outward' or 'profile', got {orientation}")
    p = embed(space, chart, u, t, tol)
    g = metric_cartesian(space, p, tol)
    psi_u, psi_t = tangents(chart, u, t, tol)
    covector = np.cross(psi_u, psi_t)
    vector = np.linalg.solve(g, covector)
    norm_sq = float(covector @ vector)
    if not norm_sq > 0.0:
        raise DegenerateImmersion(f"tangents are parallel at (u, t)=({u}, {t})")
    n = vector / math.sqrt(norm_sq)

    r = math.hypot(p.x, p.y)
    radial = float(covector @ np.array([p.x / r, p.y / r, 0.0])) if r >= tol.r_min else 0.0
    if abs(radial) <= 1e-9 * math.sqrt(float(covector @ covector)):
        radial = 0.0
    side = radial if radial != 0.0 else float(covector[2])
    if side < 0.0:
        n = -n
    if orientation == "profile" and radial != 0.0:
        slope = chart.profile_slope(u)
        if slope > 0.0:
            n = -n
    return n


def second_form_numeric(
    space: BcvSpace,
    chart: ISurfaceChart,
    u: float,
    t: float,
    orientation: str = "outward",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[float, float, float]:
    """(L, M, N) with II_ij = g(D_i psi_j, n)."""
    p = embed(space, chart, u, t, tol)
    g = metric_cartesian(space, p, tol)
    gamma = christoffels(space, p, tol)
    n = unit_normal(space, chart, u, t, orientation, tol)
    psi_u, psi_t = tangents(chart, u, t, tol)
    h = tol.fd_second
    psi_uu = diff_central(lambda s: chart.position(s, t), u, order=2, h=h, h_min=tol.fd_min)
    psi_tt = diff_central(lambda s: chart.position(u, s), t, order=2, h=h, h_min=tol.fd_min)
    psi_ut = diff_central(lambda s: tangents(chart, u, s, tol)[0], t, order=1, h=h, h_min=tol.fd_min)

    def covariant(second: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
        return float((second + np.einsum("kij,i,j->k", gamma, a, b)) @ g @ n)

    return covariant(psi_uu, psi_u, psi_u), covariant(psi_ut, psi_u, psi_t), covariant(psi_tt, psi_t, psi_t)


def mean_curvature_extrinsic(
    space: BcvSpace,
    chart: ISurfaceChart,
    u: float,
    t: float,
    orientation: str = "outward",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    e, f, g = first_form_numeric(space, chart, u, t, tol)
    det = e * g - f * f
    if not det > 0.0:
        raise DegenerateImmersion(f"EG - F^2 = {det:.3e} at (u, t)=({u}, {t})")
    l, m, n = second_form_numeric(space, chart, u, t, orientation, tol)
    return (g * l - 2.0 * f * m + e * n) / det


def gauss_intrinsic(U: IMetricProfile, u: float) -> float:
    """K = -U''/U for the metric du^2 + U(u)^2 dt^2."""
    return -U.second(u) / U.value(u)


def gauss_numeric(
    space: BcvSpace, chart: ISurfaceChart, u: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Brioschi formula on a 5x5 sub-grid of numerically measured (E, F, G)."""
    h = tol.brioschi_step
    offsets = h * np.arange(-2, 3)
    forms = np.array([[first_form_numeric(space, chart, u + du, t + dt, tol) for dt in offsets] for du in offsets])
    e, f, g = forms[..., 0], forms[..., 1], forms[..., 2]

    def d_u(a):
        return float(_D1 @ a[:, 2]) / h

    def d_t(a):
        return float(_D1 @ a[2, :]) / h

    def d_uu(a):
        return float(_D2 @ a[:, 2]) / (h * h)

    def d_tt(a):
        return float(_D2 @ a[2, :]) / (h * h)

    def d_ut(a):
        return float(_D1 @ a @ _D1) / (h * h)

    e0, f0, g0 = e[2, 2], f[2, 2], g[2, 2]
    det = e0 * g0 - f0 * f0
    if not det > 0.0:
        raise DegenerateImmersion(f"EG - F^2 = {det:.3e} at (u, t)=({u}, {t})")
    m1 = np.array(
        [
            [-0.5 * d_tt(e) + d_ut(f) - 0.5 * d_uu(g), 0.5 * d_u(e), d_u(f) - 0.5 * d_t(e)],
            [d_t(f) - 0.5 * d_u(g), e0, f0],
            [0.5 * d_t(g), f0, g0],
        ]
    )
    m2 = np.array(
        [
            [0.0, 0.5 * d_t(e), 0.5 * d_u(g)],
            [0.5 * d_t(e), e0, f0],
            [0.5 * d_u(g), f0, g0],
        ]
    )
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / (det * det))


def _grid_points(grid) -> Iterable[Tuple[float, float]]:
    us, ts = grid
    for u in us:
        for t in ts:
            yield float(u), float(t)


def isometry_deviation(
    space: BcvSpace, chart_a: ISurfaceChart, chart_b: ISurfaceChart, grid, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """max |I_A - I_B| over the (us, ts) product grid."""
    worst = 0.0
    for u, t in _grid_points(grid):
        first_a = first_form_numeric(space, chart_a, u, t, tol)
        first_b = first_form_numeric(space, chart_b, u, t, tol)
        worst = max(worst, max(abs(x - y) for x, y in zip(first_a, first_b)))
    return worst


def metric_law_deviation(
    space: BcvSpace, chart: ISurfaceChart, U: IMetricProfile, grid, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """max deviation of (E, F, G) from (1, 0, U^2) over the grid."""
    worst = 0.0
    for u, t in _grid_points(grid):
        e, f, g = first_form_numeric(space, chart, u, t, tol)
        worst = max(worst, abs(e - 1.0), abs(f), abs(g - U.value(u) ** 2))
    return worst
