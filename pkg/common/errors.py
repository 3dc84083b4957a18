"""
Error hierarchy shared by every bcvhelix package.

All failures raised on purpose derive from BcvError so the command line
front end can turn them into a logged diagnostic and a nonzero exit code.
"""


class BcvError(Exception):
    """Base class for every deliberate failure."""


# ---------- ambient space ----------


class DomainError(BcvError):
    """Point lies outside the open set where the metric is defined (B <= guard)."""


class StencilOutOfDomain(DomainError):
    """A finite-difference stencil left the metric domain or a chart's validity interval."""


# ---------- natural charts ----------


class ChartError(BcvError):
    pass


class NegativeDiscriminant(ChartError):
    pass


class NegativeRadicand(ChartError):
    pass


class DegenerateRadius(ChartError):
    pass


class EmptyDomain(ChartError):
    pass


class DegenerateOrbit(ChartError):
    pass


# ---------- profile curves ----------


class CurveError(BcvError):
    pass


class InconsistentCurve(CurveError):
    pass


# ---------- CMC families ----------


class FamilyError(BcvError):
    pass


class NoRealFamily(FamilyError):
    pass


class DegenerateFamily(FamilyError):
    pass


class ParameterOutOfRange(FamilyError):
    pass


# ---------- numerics ----------


class NumericsError(BcvError):
    pass


class QuadratureFailure(NumericsError):
    pass


class NoBracket(NumericsError):
    pass


# ---------- oracle / jobs ----------


class ImmersionError(BcvError):
    pass


class DegenerateImmersion(ImmersionError):
    pass


class ConfigError(BcvError):
    pass
