# bour/seed.py
from dataclasses import dataclass, replace
from typing import Optional, Tuple
import math

from bour.profile_interface import IMetricProfile


@dataclass(frozen=True)
class BourSeed:
    """(U, m, a): one member of the isometric family sharing the metric du^2 + U^2 dt^2."""

    U: IMetricProfile
    m: float
    a: float
    u_domain: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.m == 0 or not math.isfinite(self.m):
            raise ValueError(f"Bad argument: m must be finite and nonzero, got {self.m}")
        if not math.isfinite(self.a):
            raise ValueError(f"Bad argument: pitch a must be finite, got {self.a}")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"Bad argument: empty u_domain {self.domain}")

    @property
    def domain(self) -> Tuple[float, float]:
        return self.u_domain if self.u_domain is not None else self.U.domain

    def normalized(self) -> "BourSeed":
        """Same surface up to t -> -t, with m > 0."""
        return self if self.m > 0 else replace(self, m=-self.m)

    def with_pitch(self, a: float) -> "BourSeed":
        return replace(self, a=a)
