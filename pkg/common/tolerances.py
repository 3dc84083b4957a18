# common/tolerances.py
from pydantic import BaseModel, ConfigDict, Field


class Tolerances(BaseModel):
    """Numerical knobs threaded through every computation.

    Acceptance thresholds quoted in the test-suite assume these defaults.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    quad_abs: float = Field(1e-10, gt=0, description="Absolute tolerance for adaptive quadrature")
    quad_rel: float = Field(1e-10, gt=0, description="Relative tolerance for adaptive quadrature")
    quad_limit: int = Field(200, ge=1, description="Maximum number of quadrature panels")
    quad_knot_spacing: float = Field(0.25, gt=0, description="Spacing of cached knots for cumulative integrals")

    fd_first: float = Field(1e-5, gt=0, description="Step for first derivatives")
    fd_second: float = Field(1e-4, gt=0, description="Step for second derivatives")
    fd_christoffel: float = Field(1e-4, gt=0, description="Step for metric derivatives in Christoffel symbols")
    fd_min: float = Field(1e-7, gt=0, description="Smallest step allowed when shrinking near domain edges")

    domain_guard: float = Field(1e-9, gt=0, description="Minimum admissible B = 1 + kappa r^2 / 4")
    r_min: float = Field(1e-6, gt=0, description="Smallest radius where the cylindrical metric is treated as invertible")

    arclength: float = Field(1e-6, gt=0, description="Accepted arc-length residual for profile curves")
    radicand_eps: float = Field(1e-12, ge=0, description="Negative radicands above -eps are clamped to zero")
    case_eps: float = Field(1e-9, ge=0, description="Band around case boundaries of the CMC families")
    bisection: float = Field(1e-10, gt=0, description="Tolerance for domain endpoint bisection")
    domain_scan: int = Field(400, ge=8, description="Grid size used to scan for validity-domain endpoints")

    brioschi_step: float = Field(1e-2, gt=0, description="Spacing of the first-form sub-grid used for Gaussian curvature")


DEFAULT_TOLERANCES = Tolerances()
