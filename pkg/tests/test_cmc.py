import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcv.space import BcvSpace, SpaceClass
from bour.chart import build_chart
from bour.profiles import PolynomialProfile
from bour.seed import BourSeed
from cmc.constants import cmc_constants
from cmc.equation import cmc_residual, first_integral_check, sqrt_delta_residual, z_equation_residual
from cmc.families import CmcCase, conic_solution, cmc_U, minimal_U, select_case, sqrt_delta_profile
from common.errors import DegenerateFamily, NoRealFamily, ParameterOutOfRange
from conftest import EUCLIDEAN, H2R, NIL, S2R, SL2, SPHERE, SU2
from orbit.profile import ProfileCurve
from orbit.reduction import mean_curvature_reduced


STEEP = BcvSpace(kappa=-4.0, tau=0.0)

# (space, a, H, c, window) for one member of each case of the CMC classification.
CMC_FAMILIES = [
    pytest.param(EUCLIDEAN, 0.5, 0.0, 1.0, (-3.0, 3.0), id="euclidean-minimal"),
    pytest.param(EUCLIDEAN, 0.0, 1.0, 0.0, (-3.0, 3.0), id="round-sphere"),
    pytest.param(SPHERE, 0.2, 1.0, 0.5, (-3.0, 3.0), id="space-form"),
    pytest.param(H2R, 0.5, 1.0, -0.5, (-3.0, 3.0), id="critical"),
    pytest.param(S2R, 0.3, 1.0, -1.2, (-3.0, 3.0), id="oscillatory"),
    pytest.param(STEEP, 0.3, 1.0, 0.0, (-1.0, 1.0), id="hyperbolic-cosh"),
]

# (space, a, c) for each class of BCV space.
MINIMAL_FAMILIES = [
    pytest.param(EUCLIDEAN, 0.5, 1.0, id="euclidean"),
    pytest.param(SPHERE, 0.2, 1.5, id="sphere"),
    pytest.param(S2R, 0.3, 0.5, id="s2xr"),
    pytest.param(H2R, 0.3, 0.5, id="h2xr"),
    pytest.param(NIL, 0.5, 1.0, id="nil"),
    pytest.param(SU2, 0.2, 0.3, id="su2"),
    pytest.param(SL2, 0.2, 0.5, id="sl2"),
]


def interior(domain, n: int = 50, margin: float = 0.02) -> np.ndarray:
    lo, hi = domain
    pad = margin * (hi - lo)
    return np.linspace(lo + pad, hi - pad, n)


class TestConstants:
    def test_round_sphere(self):
        const = cmc_constants(EUCLIDEAN, 0.0, 1.0, 0.0)
        assert (const.c1, const.c2, const.b1, const.b, const.b3) == (2.0, 0.0, 0.0, 0.0, -1.0)
        assert const.b2 is None

    def test_nil(self):
        const = cmc_constants(NIL, 0.5, 0.0, 1.0)
        assert const.b1 == 1.0
        assert const.b == -2.0
        assert const.b2 == 1.0
        assert const.b3 == 0.0
        assert const.c1 == pytest.approx(1.25)
        assert const.c2 == pytest.approx(-1.5625)

    @settings(max_examples=100, deadline=None)
    @given(
        H=st.floats(0.1, 3.0, allow_nan=False),
        tau=st.floats(-1.0, 1.0, allow_nan=False),
        a=st.floats(-2.0, 2.0, allow_nan=False),
        c=st.floats(-2.0, 2.0, allow_nan=False),
    )
    def test_critical_b1_in_terms_of_H(self, H, tau, a, c):
        const = cmc_constants(BcvSpace(kappa=-H * H, tau=tau), a, H, c)
        assert const.b1 == pytest.approx(2.0 * a * tau * H * H + 4.0 * tau * tau - c * H, abs=1e-12)


class TestSelectCase:
    @pytest.mark.parametrize(
        "space, H, case",
        [
            (EUCLIDEAN, 0.0, CmcCase.EUCLIDEAN_MINIMAL),
            (EUCLIDEAN, 1.0, CmcCase.SPACE_FORM_GENERIC),
            (SPHERE, 1.0, CmcCase.SPACE_FORM_GENERIC),
            (H2R, 1.0, CmcCase.CRITICAL_KAPPA),
            (S2R, 1.0, CmcCase.OSCILLATORY),
            (NIL, 0.5, CmcCase.OSCILLATORY),
            (STEEP, 1.0, CmcCase.HYPERBOLIC_COSH),
        ],
    )
    def test_examples(self, space, H, case):
        assert select_case(space, H, 0.3, 0.0) is case

    @settings(max_examples=50, deadline=None)
    @given(a=st.floats(-2.0, 2.0, allow_nan=False), c=st.floats(-3.0, 3.0, allow_nan=False))
    def test_untwisted_hyperbolic_is_always_cosh(self, a, c):
        # For tau = 0 the discriminant is kappa (H^2 + kappa - c^2) > 0.
        assert select_case(STEEP, 1.0, a, c) is CmcCase.HYPERBOLIC_COSH


class TestConicSolution:
    @pytest.mark.parametrize(
        "K, q, s, branch",
        [
            (0.0, 1.0, 0.5, "quadratic"),
            (2.0, 1.0, 0.5, "sin"),
            (-1.0, 2.0, 1.0, "cosh"),
            (-1.0, 1.0, 2.0, "sinh"),
        ],
    )
    def test_solves_first_order_equation(self, K, q, s, branch):
        sol = conic_solution(K, q, s)
        assert sol.branch == branch
        for u in np.linspace(-1.5, 1.5, 13):
            y, dy = sol.value(u), sol.first(u)
            assert dy * dy == pytest.approx(-K * y * y + 2.0 * q * y + s, abs=1e-10)
            assert sol.second(u) == pytest.approx(-K * y + q, abs=1e-10)

    def test_period(self):
        assert conic_solution(4.0, 1.0, 0.0).period == pytest.approx(math.pi)
        assert conic_solution(-1.0, 2.0, 1.0).period is None

    def test_degenerate(self):
        with pytest.raises(DegenerateFamily):
            conic_solution(0.0, 0.0, 1.0)
        with pytest.raises(DegenerateFamily):
            conic_solution(-1.0, 1.0, 1.0)

    def test_no_real_solution(self):
        with pytest.raises(NoRealFamily):
            conic_solution(1.0, 0.0, -1.0)

    @pytest.mark.parametrize(
        "space, a, H, c, branch",
        [(S2R, 0.3, 1.0, -1.2, "sin"), (H2R, 0.5, 1.0, -0.5, "quadratic")],
        ids=["oscillatory", "critical"],
    )
    def test_sqrt_delta_profile(self, space, a, H, c, branch):
        const = cmc_constants(space, a, H, c)
        sol = sqrt_delta_profile(space, a, H, c)
        assert sol.branch == branch
        K = H * H + space.kappa
        for u in np.linspace(-1.0, 1.0, 9):
            y, dy = sol.value(u), sol.first(u)
            assert dy * dy == pytest.approx(-K * y * y + 2.0 * const.b1 * y + const.b, abs=1e-10)


class TestCmcFamilies:
    @pytest.mark.parametrize("space, a, H, c, window", CMC_FAMILIES)
    def test_residual(self, space, a, H, c, window):
        U, _ = cmc_U(space, 1.0, a, H, c, window)
        seed = BourSeed(U, 1.0, a)
        worst = max(abs(cmc_residual(space, seed, H, u)) for u in interior(U.domain))
        assert worst < 1e-8

    @pytest.mark.parametrize("space, a, H, c, window", CMC_FAMILIES)
    def test_first_integral(self, space, a, H, c, window):
        U, _ = cmc_U(space, 1.0, a, H, c, window)
        seed = BourSeed(U, 1.0, a)
        for u in interior(U.domain, n=20):
            assert abs(first_integral_check(space, seed, H, c, u)) < 1e-8
            if U.kind == "z":
                assert abs(z_equation_residual(space, seed, H, c, u)) < 1e-8
            else:
                assert abs(sqrt_delta_residual(space, seed, H, c, u)) < 1e-8

    def test_round_sphere(self):
        U, case = cmc_U(EUCLIDEAN, 1.0, 0.0, 1.0, 0.0)
        assert case is CmcCase.SPACE_FORM_GENERIC
        assert U.domain[0] == pytest.approx(-math.pi / 2, abs=1e-6)
        assert U.domain[1] == pytest.approx(3 * math.pi / 2, abs=1e-6)
        assert U.value(math.pi / 2) == pytest.approx(2.0)

    @pytest.mark.parametrize("m", [1.0, 1.5])
    def test_euclidean_cmc_formula(self, m):
        H, a, c = 0.5, 0.3, 0.4
        U, _ = cmc_U(EUCLIDEAN, m, a, H, c)
        root = math.sqrt(1.0 - c * H - a * a * H * H)
        for u in interior(U.domain, n=9):
            expected = (2.0 - c * H + 2.0 * root * math.sin(H * u)) / (m * m * H * H)
            assert U.value(u) ** 2 == pytest.approx(expected, rel=1e-12)

    def test_critical_formula(self):
        a, H, c = 0.5, 1.0, -0.5
        U, case = cmc_U(H2R, 1.0, a, H, c)
        const = cmc_constants(H2R, a, H, c)
        assert case is CmcCase.CRITICAL_KAPPA
        assert U.b3 == pytest.approx(const.b3, abs=1e-15)
        for u in interior(U.domain, n=9):
            w = 0.5 * const.b1 * u * u + const.b2
            assert U.value(u) ** 2 == pytest.approx((w * w + a * a * H * H - 1.0) / H**2, rel=1e-12)

    def test_admissible_set_respects_first_integral_sign(self):
        U, _ = cmc_U(S2R, 1.0, 0.3, 1.0, -1.2)
        for u in interior(U.domain, n=9):
            assert U.first_integral(u) >= 0.0

    def test_perturbed_profile_is_detected(self):
        U = PolynomialProfile([1.0, 0.0, 1.0], (-2.5, 2.5), perturbation=0.01)
        seed = BourSeed(U, 1.0, 0.0)
        worst = max(abs(cmc_residual(EUCLIDEAN, seed, 0.0, u)) for u in np.linspace(-2.0, 2.0, 21))
        assert worst > 1e-3

    def test_pitch_beyond_space_form_range(self):
        with pytest.raises(ParameterOutOfRange):
            cmc_U(SPHERE, 1.0, 2.0, 1.0, 0.0)

    def test_no_real_family(self):
        with pytest.raises(NoRealFamily):
            cmc_U(EUCLIDEAN, 1.0, 1.0, 1.0, 1.0)

    def test_zero_m(self):
        with pytest.raises(ValueError):
            cmc_U(EUCLIDEAN, 0.0, 0.5, 1.0, 0.0)

    @pytest.mark.parametrize("space, a, H, c, window", CMC_FAMILIES)
    def test_reduced_mean_curvature(self, space, a, H, c, window):
        U, _ = cmc_U(space, 1.0, a, H, c, window)
        chart = build_chart(space, BourSeed(U, 1.0, a))
        lo, hi = chart.domain
        pad = 0.05 * (hi - lo)
        curve = ProfileCurve(chart.xi1, chart.xi2, chart.dxi1, chart.dxi2, (lo + pad, hi - pad))
        for u in np.linspace(lo + pad, hi - pad, 9)[1:-1]:
            assert abs(mean_curvature_reduced(chart.action, curve, u)) == pytest.approx(H, abs=1e-6)

    def test_round_sphere_reduced_sign(self):
        U, _ = cmc_U(EUCLIDEAN, 1.0, 0.0, 1.0, 0.0)
        chart = build_chart(EUCLIDEAN, BourSeed(U, 1.0, 0.0))
        curve = ProfileCurve(chart.xi1, chart.xi2, chart.dxi1, chart.dxi2, (0.0, 3.0))
        assert mean_curvature_reduced(chart.action, curve, 1.0) == pytest.approx(1.0, abs=1e-6)


class TestMinimalFamilies:
    @pytest.mark.parametrize("space, a, c", MINIMAL_FAMILIES)
    def test_residual(self, space, a, c):
        U, cls = minimal_U(space, 1.0, a, c)
        seed = BourSeed(U, 1.0, a)
        assert U.label == f"minimal/{cls.value}"
        worst = max(abs(cmc_residual(space, seed, 0.0, u)) for u in interior(U.domain))
        assert worst < 1e-8

    @pytest.mark.parametrize("space, a, c", MINIMAL_FAMILIES)
    def test_first_integral(self, space, a, c):
        U, _ = minimal_U(space, 1.0, a, c)
        seed = BourSeed(U, 1.0, a)
        for u in interior(U.domain, n=20):
            assert abs(first_integral_check(space, seed, 0.0, c, u)) < 1e-8

    @pytest.mark.parametrize("space, a, c", MINIMAL_FAMILIES)
    def test_first_integral_blind_to_sign_of_c(self, space, a, c):
        U, _ = minimal_U(space, 1.0, a, c)
        mirror, _ = minimal_U(space, 1.0, a, -c)
        seed = BourSeed(U, 1.0, a)
        for u in interior(U.domain, n=7):
            assert mirror.value(u) == pytest.approx(U.value(u), rel=1e-12)
            assert abs(first_integral_check(space, seed, 0.0, -c, u)) < 1e-8

    def test_first_integral_detects_flipped_c_when_h_nonzero(self):
        a, H, c = 0.2, 1.0, 0.5
        U, _ = cmc_U(SPHERE, 1.0, a, H, c, (-3.0, 3.0))
        seed = BourSeed(U, 1.0, a)
        # Delta = (1 - 2 a tau)^2 on the space forms, so flipping c shifts y by c / |1 - 2 a tau|.
        shift = c / (1.0 - 2.0 * a * SPHERE.tau)
        for u in interior(U.domain, n=7):
            assert first_integral_check(SPHERE, seed, H, -c, u) == pytest.approx(shift, abs=1e-7)

    def test_euclidean_formula(self):
        a, c, m = 0.5, 1.0, 2.0
        U, cls = minimal_U(EUCLIDEAN, m, a, c)
        assert cls is SpaceClass.EUCLIDEAN
        for u in np.linspace(-2.0, 2.0, 9):
            assert U.value(u) ** 2 == pytest.approx((u * u + a * a + c * c / 4.0) / (m * m), rel=1e-14)

    def test_nil_helicoidal_catenoid(self):
        U, cls = minimal_U(NIL, 1.0, 0.5, 1.0)
        assert cls is SpaceClass.HEISENBERG
        for u in np.linspace(-3.0, 3.0, 13):
            assert U.value(u) == pytest.approx(0.5 * (u * u + 2.0), rel=1e-14)
            assert U.first(u) == pytest.approx(u, abs=1e-14)

    def test_nil_formula(self):
        a, c, m, tau = 0.3, 0.8, 1.3, 0.5
        U, _ = minimal_U(NIL, m, a, c)
        for u in np.linspace(-2.0, 2.0, 9):
            w = 2.0 * tau**2 * u * u + 1.0 - 2.0 * a * tau + c * c / (8.0 * tau**2)
            assert U.value(u) ** 2 == pytest.approx((w * w + 4.0 * a * tau - 1.0) / (4.0 * m * m * tau**2), rel=1e-12)

    def test_cmc_route_agrees_away_from_space_forms(self):
        # The H = 0 member of the general family is minimal too.
        U, _ = cmc_U(SU2, 1.0, 0.2, 0.0, 0.3)
        seed = BourSeed(U, 1.0, 0.2)
        assert max(abs(cmc_residual(SU2, seed, 0.0, u)) for u in interior(U.domain)) < 1e-8

    @pytest.mark.parametrize(
        "space, a, c",
        [(SPHERE, 0.0, 2.5), (S2R, 0.3, 2.0), (SU2, 0.2, 1.0)],
        ids=["sphere", "s2xr", "su2"],
    )
    def test_parameter_out_of_range(self, space, a, c):
        with pytest.raises(ParameterOutOfRange):
            minimal_U(space, 1.0, a, c)
