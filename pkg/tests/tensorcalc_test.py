"""Unit tests for the curvature pipeline
    from metric jets to d tau.
"""
from unittest import TestCase

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from relcurv.charts import evaluate_metric_jet
from relcurv.charts.flat import flat_spec
from relcurv.charts.sphere import sphere_spec
from relcurv.charts.warped import rotational_spec
from relcurv.exceptions import DegenerateMetric, JetOrderInsufficient, NotUnit, OutOfDomain
from relcurv.pipeline import curvature_at, finite_difference_dtau, scalar_curvature
from relcurv.profile import cosh_profile
from relcurv.tensorcalc import (
    ChartPoint,
    MetricJet,
    build_phi,
    build_pi,
    build_Pi,
    christoffel,
    evaluate,
    nabla_riemann,
    orthonormal_frame,
    riemann,
    riemann_residuals,
    symmetry_residuals,
    tensor_norm,
)
from relcurv.tensorcalc.frames import complement_basis, covector_norm

from tests.const import TEST_POINTS_2, TEST_POINTS_3, TEST_RADII

_unit = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def _spd(entries) -> np.ndarray:
    lower = np.tril(np.reshape(entries, (3, 3)))
    return lower @ lower.T + np.eye(3)


class MetricJetTest(TestCase):
    """Chart points and jets."""

    def test_point_needs_two_coordinates(self) -> None:
        """A one dimensional chart point is rejected"""
        with self.assertRaises(OutOfDomain):
            ChartPoint([0.5])

    def test_point_must_be_finite(self) -> None:
        """Non finite coordinates are rejected"""
        with self.assertRaises(OutOfDomain):
            ChartPoint([0.0, float("nan")])

    def test_shifted_keeps_original(self) -> None:
        """Shifting returns a new point"""
        p = ChartPoint([0.0, 1.0])
        q = p.shifted(0, 0.5)
        self.assertEqual(p.coords.tolist(), [0.0, 1.0])
        self.assertEqual(q.coords.tolist(), [0.5, 1.0])

    def test_indefinite_metric(self) -> None:
        """Indefinite g raises DegenerateMetric"""
        with self.assertRaises(DegenerateMetric):
            MetricJet.constant(np.diag([1.0, -1.0]))

    def test_order_requirement(self) -> None:
        """Curvature derivative needs a third order jet"""
        jet = MetricJet(g=np.eye(2), dg=np.zeros((2, 2, 2)), d2g=np.zeros((2, 2, 2, 2)))
        self.assertEqual(jet.order, 2)
        riemann(jet)
        with self.assertRaises(JetOrderInsufficient):
            nabla_riemann(jet)

    def test_flat_jet(self) -> None:
        """Flat chart gives identity and vanishing derivatives"""
        jet = evaluate_metric_jet(flat_spec(3), ChartPoint([0.3, -1.0, 2.0]))
        np.testing.assert_array_equal(jet.g, np.eye(3))
        self.assertEqual(float(np.max(np.abs(jet.d3g))), 0.0)

    def test_homothety(self) -> None:
        """R of c g is c R, tau of c g is tau / c"""
        jet = evaluate_metric_jet(sphere_spec(3), ChartPoint(TEST_POINTS_3[0]))
        scaled = jet.scaled(4.0)
        np.testing.assert_allclose(riemann(scaled), 4.0 * riemann(jet), atol=1e-12)
        with self.assertRaises(DegenerateMetric):
            jet.scaled(0.0)


class CurvatureTest(TestCase):
    """Riemann tensor, its derivative and the scalar curvature."""

    def test_christoffel_symmetric(self) -> None:
        """Gamma^i_jk = Gamma^i_kj"""
        spec = rotational_spec(cosh_profile(), 3)
        jet = evaluate_metric_jet(spec, ChartPoint(TEST_POINTS_3[1]))
        gamma, dgamma, d2gamma = christoffel(jet)
        np.testing.assert_allclose(gamma, gamma.transpose(0, 2, 1), atol=1e-14)
        np.testing.assert_allclose(dgamma, dgamma.transpose(0, 2, 1, 3), atol=1e-13)
        self.assertEqual(d2gamma.shape, (3,) * 5)

    def test_sphere_is_constant_curvature(self) -> None:
        """R = pi / rho^2 with tau = n (n - 1) / rho^2 and nabla R = 0"""
        for radius in TEST_RADII:
            for dim, points in ((2, TEST_POINTS_2), (3, TEST_POINTS_3)):
                spec = sphere_spec(dim, radius)
                for coords in points:
                    bundle = curvature_at(spec, ChartPoint(coords))
                    model = build_pi(bundle.jet) / radius ** 2
                    scale = float(np.max(np.abs(model)))
                    self.assertLess(float(np.max(np.abs(bundle.riem - model))), 1e-9 * scale)
                    self.assertAlmostEqual(bundle.tau, dim * (dim - 1) / radius ** 2, delta=1e-8)
                    self.assertLess(tensor_norm(bundle.nabla_riem, bundle.g), 1e-9)

    def test_sphere_unit_sectional_curvature(self) -> None:
        """R(X, Y, Y, X) = 1 on the unit sphere"""
        jet = evaluate_metric_jet(sphere_spec(3), ChartPoint(TEST_POINTS_3[2]))
        frame = orthonormal_frame(jet.g)
        x, y = frame[:, 0], frame[:, 2]
        self.assertAlmostEqual(evaluate(riemann(jet), x, y, y, x), 1.0, places=10)

    def test_identities_on_rotational_chart(self) -> None:
        """R and nabla R obey their algebraic identities"""
        spec = rotational_spec(cosh_profile(), 3)
        for coords in TEST_POINTS_3:
            bundle = curvature_at(spec, ChartPoint(coords))
            self.assertLess(riemann_residuals(bundle.riem).worst, 1e-9)
            self.assertLess(symmetry_residuals(bundle.nabla_riem).worst, 1e-9)

    def test_dtau_matches_differenced_tau(self) -> None:
        """Contracted Bianchi identity agrees with central differences of tau"""
        spec = rotational_spec(cosh_profile(), 3)
        p = ChartPoint([0.1, -0.1, 0.3])
        bundle = curvature_at(spec, p)
        np.testing.assert_allclose(bundle.dtau, finite_difference_dtau(spec, p), atol=1e-6)
        self.assertAlmostEqual(scalar_curvature(spec, p), bundle.tau, places=12)

    def test_ricci_trace(self) -> None:
        """tau is the trace of Ricci"""
        bundle = curvature_at(sphere_spec(3, 2.0), ChartPoint(TEST_POINTS_3[0]))
        self.assertAlmostEqual(
            float(np.einsum("ij,ij->", bundle.jet.g_inv, bundle.ricci)), bundle.tau, places=10
        )


class ModelTensorTest(TestCase):
    """pi, Phi and Pi(omega)."""

    def setUp(self) -> None:
        """Metric jet of a rotational chart"""
        self.jet = evaluate_metric_jet(
            rotational_spec(cosh_profile(), 3), ChartPoint(TEST_POINTS_3[1])
        )

    def tearDown(self) -> None:
        """Drop the jet"""
        self.jet = None

    def test_Pi_has_nabla_R_symmetries(self) -> None:
        """Pi(omega) obeys the same identities as nabla R"""
        omega = np.array([0.3, -1.0, 0.2])
        self.assertLess(symmetry_residuals(build_Pi(omega, self.jet)).worst, 1e-12)

    def test_phi_requires_unit_form(self) -> None:
        """Phi is only built from unit 1-forms"""
        with self.assertRaises(NotUnit):
            build_phi(self.jet, np.array([0.0, 0.0, 2.0]))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(_unit, min_size=6, max_size=6), st.lists(_unit, min_size=3, max_size=3))
    def test_Pi_on_sectional_slots(self, vectors, omega) -> None:
        """Pi(omega)(X, X, Y, Y, X) = 4 omega(X) for orthonormal X, Y"""
        g = _spd(np.linspace(0.1, 0.6, 9))
        jet = MetricJet.constant(g)
        x, y = np.array(vectors[:3]), np.array(vectors[3:])
        assume(np.sqrt(x @ g @ x) > 1e-2)
        x = x / np.sqrt(x @ g @ x)
        y = y - (x @ g @ y) * x
        assume(np.sqrt(y @ g @ y) > 1e-2)
        y = y / np.sqrt(y @ g @ y)
        omega = np.array(omega)
        value = evaluate(build_Pi(omega, jet), x, x, y, y, x)
        self.assertAlmostEqual(value, 4.0 * float(omega @ x), delta=1e-9)


class FrameTest(TestCase):
    """Orthonormal frames and norms."""

    @settings(max_examples=40, deadline=None)
    @given(st.lists(_unit, min_size=9, max_size=9))
    def test_frame_is_orthonormal(self, entries) -> None:
        """F^T g F = I for random positive definite g"""
        g = _spd(entries)
        frame = orthonormal_frame(g)
        np.testing.assert_allclose(frame.T @ g @ frame, np.eye(3), atol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(_unit, min_size=9, max_size=9), st.lists(_unit, min_size=3, max_size=3))
    def test_complement_basis(self, entries, form) -> None:
        """Kernel basis is orthonormal and annihilated by the unit form"""
        g = _spd(entries)
        form = np.array(form)
        norm = covector_norm(form, g)
        assume(norm > 1e-2)
        eta = form / norm
        basis = complement_basis(eta, g)
        self.assertEqual(basis.shape, (3, 2))
        np.testing.assert_allclose(eta @ basis, np.zeros(2), atol=1e-10)
        np.testing.assert_allclose(basis.T @ g @ basis, np.eye(2), atol=1e-10)
