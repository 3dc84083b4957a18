# bour/profiles.py
from typing import Callable, Optional, Sequence, Tuple
import math

from numpy.polynomial import Polynomial

from bour.profile_interface import IMetricProfile
from common.tolerances import DEFAULT_TOLERANCES, Tolerances
from numerics.differences import diff_central


Scalar = Callable[[float], float]


class ClosedFormProfile(IMetricProfile):
    """U with hand-differentiated U' and U''."""

    def __init__(self, value: Scalar, first: Scalar, second: Scalar, domain: Tuple[float, float], label: str = ""):
        self._value = value
        self._first = first
        self._second = second
        self._domain = (float(domain[0]), float(domain[1]))
        self.label = label

    @property
    def domain(self) -> Tuple[float, float]:
        return self._domain

    def value(self, u: float) -> float:
        return self._value(u)

    def first(self, u: float) -> float:
        return self._first(u)

    def second(self, u: float) -> float:
        return self._second(u)

    def shifted(self, u_shift: float) -> "ClosedFormProfile":
        """u -> U(u - u_shift), used to move a family's reference point."""
        lo, hi = self._domain
        return ClosedFormProfile(
            lambda u: self._value(u - u_shift),
            lambda u: self._first(u - u_shift),
            lambda u: self._second(u - u_shift),
            (lo + u_shift, hi + u_shift),
            label=self.label,
        )

    def __repr__(self) -> str:
        return f"ClosedFormProfile({self.label or '?'}, domain={self._domain})"


class CallableProfile(IMetricProfile):
    """U given as a plain function; missing derivatives come from central differences."""

    def __init__(
        self,
        value: Scalar,
        domain: Tuple[float, float],
        first: Optional[Scalar] = None,
        tol: Tolerances = DEFAULT_TOLERANCES,
    ):
        self._value = value
        self._first = first
        self._domain = (float(domain[0]), float(domain[1]))
        self.tol = tol

    @property
    def domain(self) -> Tuple[float, float]:
        return self._domain

    def value(self, u: float) -> float:
        return self._value(u)

    def first(self, u: float) -> float:
        if self._first is not None:
            return self._first(u)
        return diff_central(self._value, u, order=1, h=self.tol.fd_first, h_min=self.tol.fd_min)

    def second(self, u: float) -> float:
        if self._first is not None:
            return diff_central(self._first, u, order=1, h=self.tol.fd_first, h_min=self.tol.fd_min)
        return diff_central(self._value, u, order=2, h=self.tol.fd_second, h_min=self.tol.fd_min)


class PolynomialProfile(IMetricProfile):
    """
    U = P(u) (form="poly") or U = sqrt(P(u)) (form="sqrt_poly"), plus an
    optional linear perturbation eps * u.

    P has ascending coefficients; derivatives are exact.
    """

    def __init__(
        self,
        coefficients: Sequence[float],
        domain: Tuple[float, float],
        form: str = "sqrt_poly",
        perturbation: float = 0.0,
    ):
        if form not in ("poly", "sqrt_poly"):
            raise ValueError(f"Bad argument: form must be 'poly' or 'sqrt_poly', got {form}")
        self.poly = Polynomial(list(coefficients))
        self._d1 = self.poly.deriv(1)
        self._d2 = self.poly.deriv(2)
        self.form = form
        self.perturbation = float(perturbation)
        self._domain = (float(domain[0]), float(domain[1]))

    @property
    def domain(self) -> Tuple[float, float]:
        return self._domain

    def value(self, u: float) -> float:
        p = float(self.poly(u))
        base = p if self.form == "poly" else math.sqrt(p)
        return base + self.perturbation * u

    def first(self, u: float) -> float:
        d1 = float(self._d1(u))
        base = d1 if self.form == "poly" else d1 / (2.0 * math.sqrt(float(self.poly(u))))
        return base + self.perturbation

    def second(self, u: float) -> float:
        d2 = float(self._d2(u))
        if self.form == "poly":
            return d2
        p, d1 = float(self.poly(u)), float(self._d1(u))
        root = math.sqrt(p)
        return d2 / (2.0 * root) - d1 * d1 / (4.0 * p * root)

    def __repr__(self) -> str:
        return f"PolynomialProfile({self.form}, {list(self.poly.coef)}, eps={self.perturbation:g}, domain={self._domain})"
