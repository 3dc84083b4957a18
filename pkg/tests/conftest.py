import math

import numpy as np
import pytest

from bcv.space import BcvSpace
from bour.chart import build_chart
from bour.profiles import ClosedFormProfile, PolynomialProfile
from bour.seed import BourSeed
from orbit.action import HelicoidalAction
from orbit.profile import ProfileCurve


EUCLIDEAN = BcvSpace(kappa=0.0, tau=0.0)
NIL = BcvSpace(kappa=0.0, tau=0.5)
SPHERE = BcvSpace(kappa=1.0, tau=0.5)
S2R = BcvSpace(kappa=1.0, tau=0.0)
H2R = BcvSpace(kappa=-1.0, tau=0.0)
SU2 = BcvSpace(kappa=1.0, tau=0.25)
SL2 = BcvSpace(kappa=-1.0, tau=0.5)

# One space per kind of geometry that the randomized checks sweep over.
SAMPLE_SPACES = [EUCLIDEAN, NIL, SPHERE, H2R, SU2, SL2]


def random_point(space: BcvSpace, rng: np.random.Generator):
    """A point well inside the metric domain."""
    radius = 2.0 if space.kappa >= 0 else 0.9 * 2.0 / math.sqrt(-space.kappa)
    r = radius * math.sqrt(rng.uniform())
    phi = rng.uniform(0.0, 2.0 * math.pi)
    return r * math.cos(phi), r * math.sin(phi), rng.uniform(-2.0, 2.0)


def random_curve(space: BcvSpace, rng: np.random.Generator):
    """A wavy radius with xi2 from the arc-length condition."""
    act = HelicoidalAction(space=space, a=float(rng.uniform(-0.5, 0.5)))
    r0, amp = rng.uniform(0.6, 1.0), rng.uniform(0.05, 0.2)
    freq, phase = rng.uniform(1.0, 2.0), rng.uniform(0.0, 2.0 * math.pi)
    curve = ProfileCurve.from_radius(
        act,
        lambda u: r0 + amp * math.sin(freq * u + phase),
        lambda u: amp * freq * math.cos(freq * u + phase),
        (-1.0, 1.0),
        n_check=17,
    )
    return act, curve


def catenoid_profile(d: float = 1.0, domain=(-2.5, 2.5)) -> PolynomialProfile:
    """U = sqrt(u^2 + d^2)."""
    return PolynomialProfile([d * d, 0.0, 1.0], domain, form="sqrt_poly")


def nil_catenoid_profile(domain=(-3.5, 3.5)) -> PolynomialProfile:
    """U = (u^2 + 2) / 2."""
    return PolynomialProfile([1.0, 0.0, 0.5], domain, form="poly")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def catenoid_chart():
    return build_chart(EUCLIDEAN, BourSeed(catenoid_profile(), 1.0, 0.0, (-2.0, 2.0)))


@pytest.fixture(scope="session")
def nil_catenoid_chart():
    return build_chart(NIL, BourSeed(nil_catenoid_profile(), 1.0, 0.5))


@pytest.fixture(scope="session")
def constant_profile():
    return ClosedFormProfile(lambda u: 2.0, lambda u: 0.0, lambda u: 0.0, (-1.0, 1.0), label="constant")
