# orbit/action.py
import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

from bcv.space import BcvSpace


class HelicoidalAction(BaseModel):
    """One-parameter group generated by X = d_theta + a d_z; a = 0 is the rotational action."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    space: BcvSpace
    a: float = Field(0.0, description="Pitch of the helicoidal Killing field")

    @field_validator("a")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError(f"pitch must be finite, got {v}")
        return v

    def twist(self, b: float, xi1: float) -> float:
        """a B - tau xi1^2, the vertical part of the orbit direction scaled by B."""
        return self.a * b - self.space.tau * xi1 * xi1
