"""Unit tests for totally umbilical distributions
    and the leafwise consequences of constant relative curvature.
"""
import math
from unittest import TestCase

import numpy as np

from relcurv.charts.flat import flat_spec
from relcurv.distribution import (
    axial_field,
    constant_fit_report,
    custom_field,
    gaussian_curvature,
    leaf_gauss_check,
    remark43_constant_fit,
    remark43_measured_relation,
    sample_leaf,
    surface_constancy,
    surface_sectional_form,
    theorem41_leaf_symmetry,
    theorem42_check,
    theta_form,
    umbilicity_residual,
)
from relcurv.exceptions import HypothesisViolated
from relcurv.profile import circle_profile, constant_profile, cosh_profile
from relcurv.rotational.hypersurface import chart_point
from relcurv.rotational.meridian import meridian_ode, meridian_profile
from relcurv.tensorcalc import ChartPoint

from tests.const import (
    TEST_CASE_I_B,
    TEST_CASE_I_R0,
    TEST_CASE_I_SPAN,
    TEST_ODE_B,
    TEST_ODE_R0,
    TEST_ODE_SPAN,
    TEST_ODE_V0,
    TEST_SEED,
)


def _planar_rotation(p: ChartPoint) -> np.ndarray:
    y = p.coords[1]
    return np.array([math.cos(y), math.sin(y)] + [0.0] * (p.dim - 2))


def _ode_profile():
    return meridian_profile(meridian_ode(TEST_ODE_B, TEST_ODE_R0, TEST_ODE_V0, TEST_ODE_SPAN))


def _case_one_profile():
    return meridian_profile(meridian_ode(TEST_CASE_I_B, TEST_CASE_I_R0, 0.0, TEST_CASE_I_SPAN))


class ThetaTest(TestCase):
    """theta(X) = d eta(xi, X)."""

    def test_planar_rotation(self) -> None:
        """eta = cos y dx + sin y dy in the plane"""
        field = custom_field(flat_spec(2), _planar_rotation)
        y = 0.5
        p = ChartPoint([0.3, y])
        theta = theta_form(field, p)
        expected = np.array([-math.sin(y) ** 2, math.sin(y) * math.cos(y)])
        np.testing.assert_allclose(theta, expected, atol=1e-8)
        self.assertAlmostEqual(float(theta @ field.xi(p)), 0.0, places=9)

    def test_closed_form(self) -> None:
        """theta vanishes where d eta does"""
        field = custom_field(flat_spec(2), _planar_rotation)
        np.testing.assert_allclose(theta_form(field, ChartPoint([1.0, 0.0])), 0.0, atol=1e-9)

    def test_custom_field_is_normalized(self) -> None:
        """Raw forms are scaled to unit length"""
        field = custom_field(flat_spec(2), lambda p: np.array([3.0, 4.0]))
        np.testing.assert_allclose(field.eta(ChartPoint([0.0, 0.0])), [0.6, 0.8])


class UmbilicityTest(TestCase):
    """nabla eta against lambda (g - eta eta) + eta theta."""

    def test_catenoid(self) -> None:
        """Parallel spheres of a catenoid are umbilical with lambda = sinh / cosh^2"""
        t = 0.5
        report = umbilicity_residual(axial_field(cosh_profile(), 3), chart_point(3, t, [0.1, 0.2]))
        self.assertAlmostEqual(report.lambda_fit, math.sinh(t) / math.cosh(t) ** 2, delta=1e-8)
        self.assertLess(report.residual_eq24, 1e-8)
        self.assertLess(report.residual_involutive, 1e-8)
        np.testing.assert_allclose(report.theta, 0.0, atol=1e-7)

    def test_cylinder(self) -> None:
        """Parallel spheres of a cylinder are totally geodesic"""
        report = umbilicity_residual(axial_field(constant_profile(1.0), 3), chart_point(3, 0.7))
        self.assertAlmostEqual(report.lambda_fit, 0.0, delta=1e-9)
        self.assertLess(report.residual_eq24, 1e-8)

    def test_not_umbilical(self) -> None:
        """A rotating field in R^3 bends its planes unevenly"""
        field = custom_field(flat_spec(3), _planar_rotation)
        report = umbilicity_residual(field, ChartPoint([0.0, 0.0, 0.0]))
        self.assertAlmostEqual(report.lambda_fit, 0.5, delta=1e-8)
        self.assertGreater(report.residual_eq24, 0.1)


class LeafTest(TestCase):
    """Leaves of the axial distribution."""

    def setUp(self) -> None:
        """Meridian with a - b = B"""
        self.profile = _ode_profile()

    def tearDown(self) -> None:
        """Drop the meridian"""
        self.profile = None

    def test_gauss_equation(self) -> None:
        """1 / r^2 = a + lambda^2 on the leaves"""
        for profile, t in ((cosh_profile(), 0.4), (self.profile, 0.1), (circle_profile(1.0), 0.3)):
            self.assertLess(leaf_gauss_check(profile, 3, t), 1e-12)

    def test_surface_leaves(self) -> None:
        """Leaves of a surface are curves"""
        with self.assertRaises(HypothesisViolated):
            leaf_gauss_check(cosh_profile(), 2, 0.4)
        with self.assertRaises(HypothesisViolated):
            sample_leaf(cosh_profile(), 2, 0.4)

    def test_leaf_sample(self) -> None:
        """Leaves are round spheres of radius r(t) with the induced metric"""
        leaf = sample_leaf(self.profile, 3, 0.1, count=5, seed=TEST_SEED)
        radius = self.profile.derivatives(0.1).r
        self.assertEqual(len(leaf.points), 5)
        np.testing.assert_allclose(leaf.sectional, 1.0 / radius ** 2, rtol=1e-10)
        self.assertLess(leaf.restriction_residual, 1e-12)

    def test_leaf_symmetry(self) -> None:
        """lambda is constant on leaves and leaves have constant curvature"""
        report = theorem41_leaf_symmetry(self.profile, 3, 0.1, seed=TEST_SEED)
        self.assertTrue(report.passed)
        radius = self.profile.derivatives(0.1).r
        self.assertAlmostEqual(report.leaf_curvature, 1.0 / radius ** 2, places=8)

    def test_leaf_symmetry_needs_constant_difference(self) -> None:
        """A catenoid does not have constant a - b"""
        with self.assertRaises(HypothesisViolated):
            theorem41_leaf_symmetry(cosh_profile(), 3, 0.4)

    def test_leaf_constancy(self) -> None:
        """xi is geodesic and k is constant on each leaf"""
        report = theorem42_check(self.profile, 3, ts=[0.05, 0.15], leaf_points=3)
        self.assertTrue(report.geodesic)
        self.assertTrue(report.leafwise_constant)
        self.assertEqual(len(report.leaf_k), 2)
        self.assertLess(report.proof_identity_residual, 1e-6)

    def test_leaf_constancy_needs_constant_difference(self) -> None:
        """The leafwise comparison is only made under a - b = B"""
        with self.assertRaises(HypothesisViolated):
            theorem42_check(cosh_profile(), 3, ts=[0.2])


class ConstantFitTest(TestCase):
    """Integration constant of |d tau|^2 against tau."""

    def test_sphere(self) -> None:
        """tau = 6 on the unit 3-sphere gives C = 9.6 at B = 1"""
        fit = remark43_constant_fit(circle_profile(1.0), 3, 1.0, [-0.5, 0.0, 0.5])
        np.testing.assert_allclose(fit.estimates, 9.6, rtol=1e-12)
        self.assertLess(fit.relative_spread, 1e-12)
        self.assertEqual(fit.dropped, ())
        self.assertIsNone(constant_fit_report(circle_profile(1.0), 3, 1.0, [0.0, 0.5])[1])

    def test_cylinder(self) -> None:
        """The measured relation gives C = 4 s A = -40 for the unit cylinder"""
        relation = remark43_measured_relation(constant_profile(1.0), 3, 2.0, [0.0, 1.0, 2.0])
        np.testing.assert_allclose(relation.normalized.estimates, -40.0)
        self.assertIsNone(relation.predicted_constant)

    def test_case_one_meridian(self) -> None:
        """Along an A = 1 meridian the measured relation has C = 40"""
        profile = _case_one_profile()
        ts = np.linspace(0.03, 0.27, 7)
        relation = remark43_measured_relation(profile, 3, TEST_CASE_I_B, ts)
        self.assertAlmostEqual(relation.predicted_constant, 40.0, places=6)
        self.assertAlmostEqual(relation.leading_expected, -0.4)
        np.testing.assert_allclose(relation.normalized.estimates, 40.0, rtol=1e-6)
        self.assertLess(relation.normalized.relative_spread, 1e-6)

    def test_report_falls_back_to_measured_relation(self) -> None:
        """A spread stated fit comes with the measured relation"""
        profile = _case_one_profile()
        fit, relation = constant_fit_report(profile, 3, TEST_CASE_I_B, np.linspace(0.03, 0.27, 7))
        self.assertGreater(fit.relative_spread, 1e-4)
        self.assertIsNotNone(relation)


class SurfaceTest(TestCase):
    """Surfaces of revolution, where phi = dK."""

    def test_gaussian_curvature(self) -> None:
        """K = -1 / cosh^4 on the catenary surface"""
        gauss, slope = gaussian_curvature(cosh_profile(), 0.3)
        self.assertAlmostEqual(gauss, -1.0 / math.cosh(0.3) ** 4)
        self.assertAlmostEqual(slope, 4.0 * math.sinh(0.3) / math.cosh(0.3) ** 5)

    def test_sectional_form(self) -> None:
        """phi of the tangent plane is dK"""
        form = surface_sectional_form(cosh_profile(), 0.3, u=0.2)
        self.assertLess(form.residual, 1e-8)
        self.assertAlmostEqual(form.phi[0], 0.0, places=9)
        self.assertAlmostEqual(form.k_value, abs(form.d_k[1]) / math.cosh(0.3), places=9)

    def test_round_sphere(self) -> None:
        """K is constant on the sphere"""
        form = surface_sectional_form(circle_profile(2.0), 0.5)
        self.assertAlmostEqual(gaussian_curvature(circle_profile(2.0), 0.5)[0], 0.25)
        self.assertAlmostEqual(form.k_value, 0.0, places=9)
        report = surface_constancy(circle_profile(2.0))
        self.assertTrue(report.constant)

    def test_constancy(self) -> None:
        """|dK| varies along a catenary and agrees with the fitted k"""
        report = surface_constancy(cosh_profile(), ts=[0.2, 0.5, 0.8])
        self.assertFalse(report.constant)
        self.assertLess(report.fit_residual, 1e-6)
        self.assertEqual(len(report.k_values), 3)
