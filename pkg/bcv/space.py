# bcv/space.py
from enum import Enum
from typing import NamedTuple
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class SpaceClass(str, Enum):
    EUCLIDEAN = "Euclidean"
    SPHERE = "Sphere"
    SPHERE_PRODUCT = "SphereProduct"
    HYPERBOLIC_PRODUCT = "HyperbolicProduct"
    HEISENBERG = "Heisenberg"
    SU2 = "SU2"
    SL2R_COVER = "SL2R-cover"


class BcvSpace(BaseModel):
    """One member of the two-parameter family g_{kappa,tau}."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kappa: float = Field(..., description="Curvature of the base surface")
    tau: float = Field(..., description="Bundle curvature")

    @field_validator("kappa", "tau")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"must be finite, got {v}")
        return v

    def __str__(self) -> str:
        return f"BCV(kappa={self.kappa:g}, tau={self.tau:g})"


class AmbientPoint(NamedTuple):
    x: float
    y: float
    z: float

    @property
    def rsq(self) -> float:
        return self.x * self.x + self.y * self.y


class CylPoint(NamedTuple):
    r: float
    theta: float
    z: float

    def to_cartesian(self) -> AmbientPoint:
        return AmbientPoint(self.r * math.cos(self.theta), self.r * math.sin(self.theta), self.z)
