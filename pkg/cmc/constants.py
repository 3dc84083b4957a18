# cmc/constants.py
from typing import Optional
import logging

from pydantic import BaseModel, ConfigDict, Field

from bcv.space import BcvSpace


LOGGER = logging.getLogger("cmc")


class CmcConstants(BaseModel):
    """Constant table of the helicoidal CMC families for one (space, a, H, c)."""

    model_config = ConfigDict(frozen=True)

    b: float = Field(..., description="(1-2a tau)(kappa(1+2a tau) - 8 tau^2) - c^2")
    b1: float = Field(..., description="4 tau^2 - 2a kappa tau - cH")
    b2: Optional[float] = Field(None, description="-b / (2 b1); absent when b1 = 0")
    b3: float = Field(..., description="4a tau - a^2 kappa - 1")
    c1: float = Field(..., description="1 + (1-2a tau)^2 - cH")
    c2: float = Field(..., description="-c^2 - 4a^2 (1 - a tau)^2")
    c: float = Field(..., description="Integration constant of the first integral")
    H: float = Field(..., description="Target mean curvature (trace convention)")


def cmc_constants(space: BcvSpace, a: float, H: float, c: float) -> CmcConstants:
    k, t = space.kappa, space.tau
    p = 1.0 - 2.0 * a * t
    b = p * (k * (1.0 + 2.0 * a * t) - 8.0 * t * t) - c * c
    b1 = 4.0 * t * t - 2.0 * a * k * t - c * H
    b2 = -b / (2.0 * b1) if b1 != 0.0 else None
    if b2 is None:
        LOGGER.debug(f"cmc_constants: b1 = 0 for {space} a={a} H={H} c={c}; b2 left undefined")
    return CmcConstants(
        b=b,
        b1=b1,
        b2=b2,
        b3=4.0 * a * t - a * a * k - 1.0,
        c1=1.0 + p * p - c * H,
        c2=-c * c - 4.0 * a * a * (1.0 - a * t) ** 2,
        c=c,
        H=H,
    )
