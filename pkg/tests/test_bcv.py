import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from bcv.killing import killing_basis, killing_defect
from bcv.metric import christoffels, classify, metric_cartesian, metric_cylindrical, orthonormal_frame, scaling_factor
from bcv.space import AmbientPoint, BcvSpace, CylPoint, SpaceClass
from common.errors import DomainError, StencilOutOfDomain
from numerics.differences import diff_central
from conftest import SAMPLE_SPACES, random_point


class TestSpace:
    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            BcvSpace(kappa=math.inf, tau=0.0)

    def test_cylindrical_conversion(self):
        p = CylPoint(2.0, math.pi / 2, 1.0).to_cartesian()
        assert p.x == pytest.approx(0.0, abs=1e-15)
        assert p.y == 2.0
        assert p.z == 1.0

    @pytest.mark.parametrize(
        "kappa, tau, label",
        [
            (0.0, 0.0, SpaceClass.EUCLIDEAN),
            (1.0, 0.5, SpaceClass.SPHERE),
            (4.0, -1.0, SpaceClass.SPHERE),
            (1.0, 0.0, SpaceClass.SPHERE_PRODUCT),
            (-1.0, 0.0, SpaceClass.HYPERBOLIC_PRODUCT),
            (0.0, 0.5, SpaceClass.HEISENBERG),
            (1.0, 0.25, SpaceClass.SU2),
            (-1.0, 0.5, SpaceClass.SL2R_COVER),
        ],
    )
    def test_classify(self, kappa, tau, label):
        assert classify(BcvSpace(kappa=kappa, tau=tau)) is label

    @pytest.mark.parametrize(
        "kappa, tau, label",
        [
            (0.0, 1e-5, SpaceClass.HEISENBERG),
            (1e-10, 0.0, SpaceClass.SPHERE_PRODUCT),
            (-1e-10, 0.0, SpaceClass.HYPERBOLIC_PRODUCT),
            (1.0 + 1e-10, 0.5, SpaceClass.SPHERE),
        ],
    )
    def test_classify_exact_lines_before_sphere_band(self, kappa, tau, label):
        assert classify(BcvSpace(kappa=kappa, tau=tau)) is label


class TestMetric:
    def test_scaling_factor(self):
        assert scaling_factor(BcvSpace(kappa=0.0, tau=3.0), 5.0) == 1.0
        assert scaling_factor(BcvSpace(kappa=1.0, tau=0.0), 4.0) == 2.0

    def test_scaling_factor_outside_domain(self):
        with pytest.raises(DomainError):
            scaling_factor(BcvSpace(kappa=-1.0, tau=0.0), 4.5)

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_identity_at_origin(self, space):
        np.testing.assert_array_equal(metric_cartesian(space, AmbientPoint(0.0, 0.0, 0.0)), np.eye(3))

    def test_nil_example(self):
        g = metric_cartesian(BcvSpace(kappa=0.0, tau=0.5), AmbientPoint(1.0, 0.0, 0.0))
        np.testing.assert_allclose(g, [[1.0, 0.0, 0.0], [0.0, 1.25, -0.5], [0.0, -0.5, 1.0]], atol=1e-15)

    def test_cartesian_outside_domain(self):
        with pytest.raises(DomainError):
            metric_cartesian(BcvSpace(kappa=-1.0, tau=0.5), AmbientPoint(2.0, 1.0, 0.0))

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_positive_definite(self, space, rng):
        for _ in range(100):
            g = metric_cartesian(space, AmbientPoint(*random_point(space, rng)))
            np.testing.assert_allclose(g, g.T, atol=0.0)
            assert np.all(np.linalg.eigvalsh(g) > 0.0)

    def test_cylindrical_euclidean(self):
        np.testing.assert_allclose(metric_cylindrical(BcvSpace(kappa=0.0, tau=0.0), CylPoint(2.0, 0.3, 0.0)), np.diag([1.0, 4.0, 1.0]))

    def test_cylindrical_nil(self):
        g = metric_cylindrical(BcvSpace(kappa=0.0, tau=0.5), CylPoint(1.0, 0.0, 0.0))
        assert g[0, 0] == 1.0
        assert g[1, 1] == pytest.approx(1.25)
        assert g[1, 2] == pytest.approx(-0.5)
        assert g[2, 2] == 1.0

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_cylindrical_is_pullback(self, space, rng):
        for _ in range(100):
            x, y, z = random_point(space, rng)
            r, theta = math.hypot(x, y), math.atan2(y, x)
            if r < 1e-3:
                continue
            jac = np.array(
                [
                    [math.cos(theta), -r * math.sin(theta), 0.0],
                    [math.sin(theta), r * math.cos(theta), 0.0],
                    [0.0, 0.0, 1.0],
                ]
            )
            pulled = jac.T @ metric_cartesian(space, AmbientPoint(x, y, z)) @ jac
            np.testing.assert_allclose(metric_cylindrical(space, CylPoint(r, theta, z)), pulled, atol=1e-12)


class TestFrame:
    def test_origin(self):
        frame = orthonormal_frame(BcvSpace(kappa=1.0, tau=0.5), AmbientPoint(0.0, 0.0, 0.0))
        np.testing.assert_array_equal(frame, np.eye(3))

    def test_example_point(self):
        frame = orthonormal_frame(BcvSpace(kappa=1.0, tau=0.5), AmbientPoint(2.0, 0.0, 0.0))
        np.testing.assert_allclose(frame, [[2.0, 0.0, 0.0], [0.0, 2.0, 1.0], [0.0, 0.0, 1.0]])

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_orthonormal(self, space, rng):
        for _ in range(100):
            p = AmbientPoint(*random_point(space, rng))
            frame = orthonormal_frame(space, p)
            np.testing.assert_allclose(frame @ metric_cartesian(space, p) @ frame.T, np.eye(3), atol=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        kappa=st.floats(-2.0, 2.0, allow_nan=False),
        tau=st.floats(-1.0, 1.0, allow_nan=False),
        r=st.floats(0.0, 0.9, allow_nan=False),
        phi=st.floats(0.0, 2.0 * math.pi, allow_nan=False),
    )
    def test_orthonormal_property(self, kappa, tau, r, phi):
        # r < 0.9 keeps B >= 1 - 2 * 0.81 / 4 > 0 for every kappa in range.
        space = BcvSpace(kappa=kappa, tau=tau)
        p = AmbientPoint(r * math.cos(phi), r * math.sin(phi), 0.7)
        frame = orthonormal_frame(space, p)
        np.testing.assert_allclose(frame @ metric_cartesian(space, p) @ frame.T, np.eye(3), atol=1e-12)


class TestChristoffels:
    def test_flat(self, rng):
        for _ in range(10):
            gamma = christoffels(BcvSpace(kappa=0.0, tau=0.0), AmbientPoint(*rng.uniform(-2.0, 2.0, 3)))
            assert np.max(np.abs(gamma)) < 1e-10

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_symmetric(self, space, rng):
        gamma = christoffels(space, AmbientPoint(*random_point(space, rng)))
        np.testing.assert_array_equal(gamma, gamma.transpose(0, 2, 1))

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_metric_compatible(self, space, rng):
        for _ in range(5):
            p = np.asarray(random_point(space, rng))
            g = metric_cartesian(space, AmbientPoint(*p))
            gamma = christoffels(space, AmbientPoint(*p))
            for l in range(3):
                def shifted(s: float, l=l) -> np.ndarray:
                    q = p.copy()
                    q[l] += s
                    return metric_cartesian(space, AmbientPoint(*q))

                dg = diff_central(shifted, 0.0, order=1, h=1e-4)
                # d_l g_ij = Gamma^k_li g_kj + Gamma^k_lj g_ik
                rebuilt = gamma[:, l, :].T @ g + g @ gamma[:, l, :]
                np.testing.assert_allclose(rebuilt, dg, atol=1e-8)

    def test_stencil_leaving_the_domain(self):
        h2r = BcvSpace(kappa=-1.0, tau=0.0)
        with pytest.raises(StencilOutOfDomain):
            christoffels(h2r, AmbientPoint(2.0 * math.sqrt(1.0 - 1e-8), 0.0, 0.0))


class TestKilling:
    def test_third_field_vanishes_at_origin(self):
        basis = killing_basis(BcvSpace(kappa=1.0, tau=0.25), AmbientPoint(0.0, 0.0, 0.0))
        np.testing.assert_array_equal(basis[2], np.zeros(3))

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_vertical_field(self, space, rng):
        p = AmbientPoint(*random_point(space, rng))
        np.testing.assert_array_equal(killing_basis(space, p)[3], [0.0, 0.0, 1.0])

    @pytest.mark.parametrize("space", SAMPLE_SPACES, ids=str)
    def test_killing_equation(self, space, rng):
        worst = 0.0
        for _ in range(100):
            p = AmbientPoint(*random_point(space, rng))
            worst = max(worst, max(killing_defect(space, k, p) for k in range(4)))
        assert worst < 1e-6
