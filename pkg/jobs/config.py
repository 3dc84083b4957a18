"""
Job configuration: one JSON document per invocation.

Command-line overrides ``key.path=value`` are applied to the parsed document
before validation; values are read as JSON when possible and as plain strings
otherwise (``seed.a=0.25``, ``output.formats=["obj","csv"]``).
"""

from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple
import json
import logging
import math

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from common.errors import ConfigError
from common.tolerances import Tolerances


LOGGER = logging.getLogger("jobs")

Command = Literal["classify", "chart", "cmc", "minimal", "deform", "verify", "export"]


class SpaceConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kappa: float = Field(..., description="Base curvature")
    tau: float = Field(..., description="Bundle curvature")


class ExplicitProfileConfig(BaseModel):
    """U(u) = P(u) or sqrt(P(u)) for a polynomial P with ascending coefficients."""

    model_config = ConfigDict(extra="forbid")

    form: Literal["poly", "sqrt_poly"] = Field("sqrt_poly", description="Whether P is U or U^2")
    coefficients: List[float] = Field(..., min_length=1, description="Ascending coefficients of P")
    perturbation: float = Field(0.0, description="Adds perturbation * u to U")


class SeedConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    family: Literal["cmc", "minimal", "explicit"] = Field("minimal", description="Where U comes from")
    m: float = Field(1.0, description="Bour parameter m, nonzero")
    a: float = Field(0.0, description="Pitch")
    H: float = Field(0.0, description="Mean curvature (ignored for minimal families)")
    c: float = Field(0.0, description="Integration constant of the family")
    u_range: Optional[Tuple[float, float]] = Field(None, description="Restricts the u-domain of the chart")
    window: Tuple[float, float] = Field((-3.0, 3.0), description="Search window for non-periodic families")
    profile: Optional[ExplicitProfileConfig] = Field(None, description="U for family='explicit'")

    @field_validator("m")
    @classmethod
    def _nonzero(cls, v: float) -> float:
        if v == 0 or not math.isfinite(v):
            raise ValueError("m must be finite and nonzero")
        return v

    @field_validator("u_range", "window")
    @classmethod
    def _interval(cls, v):
        if v is not None and not v[0] < v[1]:
            raise ValueError(f"interval must be nonempty, got {v}")
        return v

    @model_validator(mode="after")
    def _explicit_needs_profile(self) -> "SeedConfig":
        if self.family == "explicit" and self.profile is None:
            raise ValueError("family='explicit' requires a profile block")
        return self


class SweepConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    parameter: Literal["a", "m"] = "a"
    values: List[float] = Field(..., min_length=1)


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    nu: int = Field(21, ge=2)
    nt: int = Field(21, ge=2)
    t_range: Tuple[float, float] = Field((-math.pi, math.pi), description="Range of the natural parameter t")


class VerifyThresholds(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cmc_residual: float = Field(1e-8, gt=0)
    mean_curvature: float = Field(1e-4, gt=0)
    first_form: float = Field(1e-6, gt=0)
    residual_points: int = Field(50, ge=2, description="Interior abscissae used for the ODE residual")


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    stem: str = Field("surface", min_length=1)
    formats: List[Literal["csv", "obj", "json", "profile"]] = Field(default_factory=lambda: ["json"])
    raw_parametrization: bool = Field(False, description="Export (u, theta) instead of the natural (u, t)")


class JobConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    space: SpaceConfig
    mode: Optional[Command] = None
    seed: SeedConfig = Field(default_factory=SeedConfig)
    sweep: Optional[SweepConfig] = None
    grid: GridConfig = Field(default_factory=GridConfig)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    thresholds: VerifyThresholds = Field(default_factory=VerifyThresholds)
    output: OutputConfig = Field(default_factory=OutputConfig)


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(document: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"override '{item}' is not of the form key.path=value")
        path, raw = item.split("=", 1)
        keys = [k for k in path.strip().split(".") if k]
        if not keys:
            raise ConfigError(f"override '{item}' has an empty key")
        node = document
        for key in keys[:-1]:
            child = node.setdefault(key, {})
            if not isinstance(child, dict):
                raise ConfigError(f"override '{item}': '{key}' is not a section")
            node = child
        node[keys[-1]] = _parse_value(raw)
        LOGGER.info(f"apply_overrides: {path}={raw}")
    return document


def load_config(text: str, overrides: Sequence[str] = (), mode: Optional[str] = None) -> JobConfig:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(document, dict):
        raise ConfigError("config must be a JSON object")
    document = apply_overrides(document, overrides)
    if mode is not None:
        document["mode"] = mode
    try:
        return JobConfig.model_validate(document)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"invalid config: {problems}") from e
