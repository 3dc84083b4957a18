"""
Closed-form helicoidal CMC families.

Every family comes from one first-order equation

    y'^2 = -K y^2 + 2 q y + s

solved with zero phase. When kappa = 4 tau^2 the unknown is z = m^2 U^2 with
(K, q, s) = (H^2 + 4 tau^2, c1, c2); otherwise it is w = sqrt(Delta) with
(K, q, s) = (H^2 + kappa, b1, b) and m^2 U^2 = (w^2 + b3) / (4 tau^2 - kappa).
"""

from enum import Enum
from typing import Callable, NamedTuple, Optional, Tuple
import logging
import math

import numpy as np

from bcv.metric import classify
from bcv.space import BcvSpace, SpaceClass
from bour.profiles import ClosedFormProfile
from cmc.constants import cmc_constants
from common.errors import BcvError, DegenerateFamily, EmptyDomain, NoRealFamily, ParameterOutOfRange
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.roots import bracket_root


LOGGER = logging.getLogger("cmc")

Scalar = Callable[[float], float]


class CmcCase(str, Enum):
    EUCLIDEAN_MINIMAL = "EuclideanMinimal"
    SPACE_FORM_GENERIC = "SpaceFormGeneric"
    CRITICAL_KAPPA = "CriticalKappa"
    OSCILLATORY = "Oscillatory"
    HYPERBOLIC_SINH = "HyperbolicSinh"
    HYPERBOLIC_COSH = "HyperbolicCosh"


class ConicSolution(NamedTuple):
    branch: str
    value: Scalar
    first: Scalar
    second: Scalar
    period: Optional[float]


def conic_solution(K: float, q: float, s: float, eps: float = DEFAULT_TOLERANCES.case_eps) -> ConicSolution:
    """Zero-phase solution of y'^2 = -K y^2 + 2 q y + s."""
    if abs(K) <= eps:
        if q == 0.0:
            raise DegenerateFamily("y'^2 = s has only affine solutions (q = 0, K = 0)")
        y0 = -s / (2.0 * q)
        return ConicSolution(
            "quadratic",
            lambda u: 0.5 * q * u * u + y0,
            lambda u: q * u,
            lambda u: q,
            None,
        )
    disc = q * q + s * K
    if K > 0:
        if disc < -eps:
            raise NoRealFamily(f"q^2 + sK = {disc:.3e} is negative")
        amp, nu = math.sqrt(max(disc, 0.0)), math.sqrt(K)
        return ConicSolution(
            "sin",
            lambda u: (q + amp * math.sin(nu * u)) / K,
            lambda u: amp * math.cos(nu * u) / nu,
            lambda u: -amp * math.sin(nu * u),
            2.0 * math.pi / nu,
        )
    if abs(disc) <= eps:
        raise DegenerateFamily(f"q^2 + sK = {disc:.3e} vanishes: constant solution only")
    nu = math.sqrt(-K)
    if disc > 0:
        amp = math.sqrt(disc)
        return ConicSolution(
            "cosh",
            lambda u: (q - amp * math.cosh(nu * u)) / K,
            lambda u: -amp * nu * math.sinh(nu * u) / K,
            lambda u: amp * math.cosh(nu * u),
            None,
        )
    amp = math.sqrt(-disc)
    return ConicSolution(
        "sinh",
        lambda u: (q - amp * math.sinh(nu * u)) / K,
        lambda u: -amp * nu * math.cosh(nu * u) / K,
        lambda u: amp * math.sinh(nu * u),
        None,
    )


def sqrt_delta_profile(space: BcvSpace, a: float, H: float, c: float, tol: Tolerances = DEFAULT_TOLERANCES) -> ConicSolution:
    """sqrt(Delta) along the family with 4 tau^2 != kappa."""
    const = cmc_constants(space, a, H, c)
    return conic_solution(H * H + space.kappa, const.b1, const.b, tol.case_eps)


def select_case(
    space: BcvSpace, H: float, a: float = 0.0, c: float = 0.0, tol: Tolerances = DEFAULT_TOLERANCES
) -> CmcCase:
    k, t = space.kappa, space.tau
    if k == 0.0 and t == 0.0 and H == 0.0:
        return CmcCase.EUCLIDEAN_MINIMAL
    if abs(k - 4.0 * t * t) <= tol.case_eps:
        return CmcCase.SPACE_FORM_GENERIC
    K = H * H + k
    if abs(K) <= tol.case_eps:
        return CmcCase.CRITICAL_KAPPA
    if K > 0:
        return CmcCase.OSCILLATORY
    const = cmc_constants(space, a, H, c)
    disc = const.b1**2 + const.b * K
    if abs(disc) <= tol.case_eps:
        raise DegenerateFamily(f"{space} H={H} a={a} c={c}: b1^2 + b(H^2+kappa) = {disc:.3e}")
    return CmcCase.HYPERBOLIC_COSH if disc > 0 else CmcCase.HYPERBOLIC_SINH


# ---------- family profiles ----------


class FamilyProfile(ClosedFormProfile):
    """U(u) of a CMC family, carrying the data that produced it."""

    def __init__(
        self,
        space: BcvSpace,
        m: float,
        a: float,
        H: float,
        c: float,
        kind: str,
        kernel: ConicSolution,
        b3: float,
        case: Optional[CmcCase],
        domain: Tuple[float, float],
        label: str,
    ):
        self.space = space
        self.m, self.a, self.H, self.c = m, a, H, c
        self.kind = kind
        self.kernel = kernel
        self.b3 = b3
        self.case = case
        self.lam = 4.0 * space.tau**2 - space.kappa
        scale = abs(m)

        def root(u: float) -> Tuple[float, float, float]:
            z, dz, d2z = self.scaled_square(u)
            v = math.sqrt(z)
            dv = dz / (2.0 * v)
            return v / scale, dv / scale, (d2z - 2.0 * dv * dv) / (2.0 * v) / scale

        super().__init__(
            lambda u: root(u)[0],
            lambda u: root(u)[1],
            lambda u: root(u)[2],
            domain,
            label=label,
        )

    def scaled_square(self, u: float) -> Tuple[float, float, float]:
        """m^2 U^2 and its first two derivatives."""
        y, dy, d2y = self.kernel.value(u), self.kernel.first(u), self.kernel.second(u)
        if self.kind == "z":
            return y, dy, d2y
        return (y * y + self.b3) / self.lam, 2.0 * y * dy / self.lam, 2.0 * (dy * dy + y * d2y) / self.lam

    def first_integral(self, u: float) -> float:
        """y = (H x^2 + c) / (2 sqrt(Delta)) or (H sqrt(Delta) + c) / (4 tau^2 - kappa)."""
        y = self.kernel.value(u)
        if self.kind == "z":
            p = 1.0 - 2.0 * self.a * self.space.tau
            return (self.H * y + self.c) / (2.0 * p)
        return (self.H * y + self.c) / self.lam

    def admissible(self, u: float) -> bool:
        try:
            z = self.scaled_square(u)[0]
            if not (z > 0.0 and z - self.a * self.a > 0.0):
                return False
            if self.kind == "w" and self.kernel.value(u) < 0.0:
                return False
            # On the complementary set the same U has mean curvature -H.
            return self.H == 0.0 or self.first_integral(u) >= 0.0
        except (BcvError, ValueError, ZeroDivisionError, OverflowError):
            return False


def _restrict(profile: FamilyProfile, window: Tuple[float, float], tol: Tolerances) -> Tuple[float, float]:
    grid = np.linspace(window[0], window[1], tol.domain_scan + 1)
    flags = [profile.admissible(u) for u in grid]
    best, start = None, None
    for i, flag in enumerate(flags + [False]):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if best is None or i - 1 - start > best[1] - best[0]:
                best = (start, i - 1)
            start = None
    if best is None:
        raise EmptyDomain(f"{profile.label}: U^2 > a^2 nowhere on {window}")
    i, j = best
    lo = grid[i] if i == 0 else bracket_root(profile.admissible, grid[i], grid[i - 1], tol.bisection)
    hi = grid[j] if j == len(grid) - 1 else bracket_root(profile.admissible, grid[j], grid[j + 1], tol.bisection)
    # The positivity set is open; keep both ends strictly inside it.
    while not profile.admissible(lo):
        lo += tol.bisection
    while not profile.admissible(hi):
        hi -= tol.bisection
    if not lo < hi:
        raise EmptyDomain(f"{profile.label}: admissible set is a single point")
    return float(lo), float(hi)


def _family(
    space: BcvSpace,
    m: float,
    a: float,
    H: float,
    c: float,
    kind: str,
    kernel: ConicSolution,
    b3: float,
    case: Optional[CmcCase],
    label: str,
    window: Tuple[float, float],
    tol: Tolerances,
) -> FamilyProfile:
    if kernel.period is not None:
        window = (-kernel.period, kernel.period)
    profile = FamilyProfile(space, m, a, H, c, kind, kernel, b3, case, window, label)
    profile._domain = _restrict(profile, window, tol)
    LOGGER.info(f"{label}: {space} m={m} a={a} H={H} c={c} branch={kernel.branch} domain={profile.domain}")
    return profile


def _space_form_check(space: BcvSpace, a: float):
    if 1.0 - 2.0 * a * space.tau <= 0.0:
        raise ParameterOutOfRange(f"{space}: the kappa = 4 tau^2 families need 1 - 2a tau > 0, got a={a}")


def cmc_U(
    space: BcvSpace,
    m: float,
    a: float,
    H: float,
    c: float,
    window: Tuple[float, float] = (-3.0, 3.0),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[FamilyProfile, CmcCase]:
    """
    U(u) of the helicoidal surface with constant mean curvature H.

    Non-periodic families are restricted to their admissible run inside
    ``window``; periodic ones are scanned over two periods around u = 0.
    """
    if m == 0:
        raise ValueError("Bad argument: m must be nonzero")
    case = select_case(space, H, a, c, tol)
    const = cmc_constants(space, a, H, c)
    k, t = space.kappa, space.tau
    label = f"cmc/{case.value}"
    if case in (CmcCase.EUCLIDEAN_MINIMAL, CmcCase.SPACE_FORM_GENERIC):
        _space_form_check(space, a)
        kernel = conic_solution(H * H + 4.0 * t * t, const.c1, const.c2, tol.case_eps)
        return _family(space, m, a, H, c, "z", kernel, const.b3, case, label, window, tol), case

    kernel = conic_solution(H * H + k, const.b1, const.b, tol.case_eps)
    b3 = const.b3
    if case is CmcCase.CRITICAL_KAPPA:
        # Written with a^2 H^2 in place of -a^2 kappa; equal on kappa = -H^2.
        b3 = a * a * H * H + 4.0 * a * t - 1.0
    return _family(space, m, a, H, c, "w", kernel, b3, case, label, window, tol), case


# ---------- minimal surfaces ----------


def _z_kernel(value: Scalar, first: Scalar, second: Scalar, period: Optional[float] = None) -> ConicSolution:
    return ConicSolution("closed", value, first, second, period)


def minimal_U(
    space: BcvSpace,
    m: float,
    a: float,
    c: float,
    window: Tuple[float, float] = (-3.0, 3.0),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[FamilyProfile, SpaceClass]:
    """Helicoidal minimal surfaces, one closed form per class of BCV space."""
    if m == 0:
        raise ValueError("Bad argument: m must be nonzero")
    cls = classify(space, tol)
    k, t = space.kappa, space.tau
    p = 1.0 - 2.0 * a * t
    lam = 4.0 * t * t - k
    b3 = 4.0 * a * t - a * a * k - 1.0
    label = f"minimal/{cls.value}"

    if cls is SpaceClass.EUCLIDEAN:
        z0 = a * a + 0.25 * c * c
        kernel = _z_kernel(lambda u: u * u + z0, lambda u: 2.0 * u, lambda u: 2.0)
        return _family(space, m, a, 0.0, c, "z", kernel, b3, None, label, window, tol), cls

    if cls is SpaceClass.SPHERE:
        _space_form_check(space, a)
        if not (t * c) ** 2 < p * p:
            raise ParameterOutOfRange(f"{label}: need |c| < |1/tau - 2a|, got c={c}")
        amp, nu = 2.0 * math.sqrt(p * p - (t * c) ** 2), 2.0 * abs(t)
        scale = 4.0 * t * t
        kernel = _z_kernel(
            lambda u: (1.0 + p * p + amp * math.sin(nu * u)) / scale,
            lambda u: amp * nu * math.cos(nu * u) / scale,
            lambda u: -amp * nu * nu * math.sin(nu * u) / scale,
            2.0 * math.pi / nu,
        )
        return _family(space, m, a, 0.0, c, "z", kernel, b3, None, label, window, tol), cls

    if cls is SpaceClass.SPHERE_PRODUCT:
        if not c * c < k:
            raise ParameterOutOfRange(f"{label}: need |c| < sqrt(kappa), got c={c}")
        amp, nu = math.sqrt(1.0 - c * c / k), math.sqrt(k)
        kernel = ConicSolution(
            "sin",
            lambda u: amp * math.sin(nu * u),
            lambda u: amp * nu * math.cos(nu * u),
            lambda u: -amp * nu * nu * math.sin(nu * u),
            2.0 * math.pi / nu,
        )
        return _family(space, m, a, 0.0, c, "w", kernel, b3, None, label, window, tol), cls

    if cls is SpaceClass.HYPERBOLIC_PRODUCT:
        amp, nu = math.sqrt((c * c - k) / -k), math.sqrt(-k)
        kernel = ConicSolution(
            "cosh",
            lambda u: amp * math.cosh(nu * u),
            lambda u: amp * nu * math.sinh(nu * u),
            lambda u: amp * nu * nu * math.cosh(nu * u),
            None,
        )
        return _family(space, m, a, 0.0, c, "w", kernel, b3, None, label, window, tol), cls

    if cls is SpaceClass.HEISENBERG:
        w0 = p + c * c / (8.0 * t * t)
        kernel = ConicSolution(
            "quadratic",
            lambda u: 2.0 * t * t * u * u + w0,
            lambda u: 4.0 * t * t * u,
            lambda u: 4.0 * t * t,
            None,
        )
        return _family(space, m, a, 0.0, c, "w", kernel, b3, None, label, window, tol), cls

    # SU(2) and the universal cover of SL(2, R): K = kappa.
    if cls is SpaceClass.SU2 and not c * c * k < lam * lam:
        raise ParameterOutOfRange(f"{label}: need |c| < |4 tau^2 - kappa| / sqrt(kappa), got c={c}")
    const = cmc_constants(space, a, 0.0, c)
    kernel = conic_solution(k, const.b1, const.b, tol.case_eps)
    return _family(space, m, a, 0.0, c, "w", kernel, b3, None, label, window, tol), cls
