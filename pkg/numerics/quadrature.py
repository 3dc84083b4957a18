"""
Adaptive quadrature kernels.

quad_adaptive wraps QUADPACK's globally adaptive Gauss-Kronrod routine
(scipy.integrate.quad) and reports the panel count it used. CumulativeIntegral
evaluates u -> integral from u0 to u many times over a grid by caching sums
between fixed knots, so that a sweep over a grid costs one pass and each value
needs only a short tail integral (one Gauss-Kronrod panel, smooth in u, which
finite-difference stencils rely on).
"""

from typing import Callable, Dict, NamedTuple
import logging
import math
import threading

from scipy import integrate

from common.errors import QuadratureFailure
from common.tolerances import DEFAULT_TOLERANCES, Tolerances


LOGGER = logging.getLogger("numerics")


class QuadResult(NamedTuple):
    value: float
    abs_error_estimate: float
    panel_count: int


def quad_adaptive(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    abs_tol: float = DEFAULT_TOLERANCES.quad_abs,
    rel_tol: float = DEFAULT_TOLERANCES.quad_rel,
    limit: int = DEFAULT_TOLERANCES.quad_limit,
) -> QuadResult:
    """
    :param f: integrand, finite on [lo, hi] up to integrable square-root endpoint singularities
    :return: QuadResult with the QUADPACK error estimate and number of panels
    :raises QuadratureFailure: tolerance not met within ``limit`` panels
    """
    if lo == hi:
        return QuadResult(0.0, 0.0, 1)
    out = integrate.quad(f, lo, hi, epsabs=abs_tol, epsrel=rel_tol, limit=limit, full_output=1)
    value, err, info = float(out[0]), float(out[1]), out[2]
    panels = max(int(info.get("last", 1)), 1)
    if len(out) > 3:
        allowed = max(abs_tol, rel_tol * abs(value))
        # QUADPACK also flags roundoff when the estimate is already at machine level.
        if err > 100.0 * allowed or math.isnan(value):
            LOGGER.error(f"quad_adaptive: failed on [{lo}, {hi}] err={err:.3e} panels={panels} msg={out[3]}")
            raise QuadratureFailure(
                f"quadrature on [{lo}, {hi}] did not reach tolerance {allowed:.1e}: "
                f"estimate={err:.3e}, panels={panels}"
            )
        LOGGER.debug(f"quad_adaptive: accepted flagged result err={err:.3e} msg={out[3]}")
    return QuadResult(value, err, panels)


class CumulativeIntegral:
    """u -> integral of f from u0 to u, with knot sums cached behind a lock."""

    def __init__(self, f: Callable[[float], float], u0: float, tol: Tolerances = DEFAULT_TOLERANCES):
        self.f = f
        self.u0 = float(u0)
        self.tol = tol
        self.spacing = tol.quad_knot_spacing
        self._knots: Dict[int, float] = {0: 0.0}
        self._lock = threading.Lock()

    def _integrate(self, lo: float, hi: float) -> float:
        return quad_adaptive(
            self.f, lo, hi, abs_tol=self.tol.quad_abs, rel_tol=self.tol.quad_rel, limit=self.tol.quad_limit
        ).value

    def _knot_value(self, k: int) -> float:
        with self._lock:
            if k in self._knots:
                return self._knots[k]
            step = 1 if k > 0 else -1
            j = 0
            while j + step in self._knots and j != k:
                j += step
            total = self._knots[j]
            while j != k:
                lo = self.u0 + j * self.spacing
                hi = self.u0 + (j + step) * self.spacing
                total += self._integrate(lo, hi)
                j += step
                self._knots[j] = total
            return total

    def __call__(self, u: float) -> float:
        # Knot between u0 and u, so the integrand is only sampled on [u0, u].
        k = int((u - self.u0) / self.spacing)
        base = self._knot_value(k)
        knot = self.u0 + k * self.spacing
        return base + self._integrate(knot, float(u))
