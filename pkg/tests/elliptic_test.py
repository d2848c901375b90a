"""Unit tests for the elliptic form of the meridians."""
import math
from unittest import TestCase

from hypothesis import given, settings
from hypothesis import strategies as st

from relcurv.exceptions import DiscriminantNegative, DomainViolation, ModulusOutOfRange
from relcurv.rotational.elliptic import (
    calibrate_caseII_modulus,
    elliptic_caseI,
    elliptic_distance,
    elliptic_params,
    legendre_integrals,
    legendre_reference,
    parameter_limit,
    turning_radius,
)

from tests.const import (
    TEST_CASE_I_A,
    TEST_CASE_I_B,
    TEST_CASE_I_R0,
    TEST_CASE_I_WIDE_A,
    TEST_CASE_I_WIDE_B,
    TEST_CASE_II_A,
    TEST_CASE_II_B,
    TEST_CASE_II_R0,
)


class ParamsTest(TestCase):
    """m, m' and the modulus."""

    def test_case_two_roots(self) -> None:
        """A = -1, B = 2.5 gives m = 1/2 and m' = -2"""
        params = elliptic_params(TEST_CASE_II_A, TEST_CASE_II_B)
        self.assertAlmostEqual(params.m, 0.5)
        self.assertAlmostEqual(params.m_prime, -2.0)
        self.assertAlmostEqual(params.modulus, 0.5)
        self.assertLess(params.product_residual, 1e-14)
        self.assertLess(params.difference_residual, 1e-14)
        self.assertAlmostEqual(turning_radius(params), TEST_CASE_II_R0)

    def test_case_one_roots(self) -> None:
        """A = B = 1 gives the golden ratio roots"""
        params = elliptic_params(TEST_CASE_I_A, TEST_CASE_I_B)
        self.assertAlmostEqual(params.m, (math.sqrt(5.0) - 1.0) / 2.0)
        self.assertAlmostEqual(params.m_prime, (math.sqrt(5.0) + 1.0) / 2.0)
        self.assertAlmostEqual(turning_radius(params), TEST_CASE_I_R0)
        self.assertAlmostEqual(parameter_limit(params), math.sqrt(1.0 - params.m))

    def test_negative_discriminant(self) -> None:
        """B^2 + 4A < 0 has no real roots"""
        with self.assertRaises(DiscriminantNegative):
            elliptic_params(-1.0, 1.0)

    def test_circle_has_no_elliptic_form(self) -> None:
        """A = 0 is rejected"""
        with self.assertRaises(DomainViolation):
            elliptic_params(0.0, 1.0)
        with self.assertRaises(DomainViolation):
            elliptic_caseI(TEST_CASE_II_A, TEST_CASE_II_B, 0.5)


class LegendreTest(TestCase):
    """Incomplete integrals J1 and J2."""

    def test_complete_circular(self) -> None:
        """k = 0, x = 1 gives pi / 2 and pi / 4"""
        j1, j2 = legendre_integrals(1.0, 0.0)
        self.assertAlmostEqual(j1, math.pi / 2.0, places=12)
        self.assertAlmostEqual(j2, math.pi / 4.0, places=12)

    def test_origin(self) -> None:
        """Both integrals start at zero"""
        self.assertEqual(legendre_integrals(0.0, 0.3), (0.0, 0.0))

    def test_range(self) -> None:
        """x in [0, 1] and modulus in [0, 1)"""
        with self.assertRaises(ModulusOutOfRange):
            legendre_integrals(0.5, 1.0)
        with self.assertRaises(ModulusOutOfRange):
            legendre_integrals(1.5, 0.2)

    @settings(max_examples=50, deadline=None)
    @given(
        st.floats(min_value=0.0, max_value=0.99, allow_nan=False),
        st.one_of(st.just(0.0), st.floats(min_value=0.05, max_value=0.95, allow_nan=False)),
    )
    def test_against_scipy(self, x, modulus) -> None:
        """Quadrature agrees with scipy's F and E"""
        ours = legendre_integrals(x, modulus)
        reference = legendre_reference(x, modulus)
        self.assertAlmostEqual(ours[0], reference[0], places=10)
        self.assertAlmostEqual(ours[1], reference[1], places=8)


class ParameterizationTest(TestCase):
    """Elliptic meridians against the quadrature."""

    def test_case_one(self) -> None:
        """A > 0 matches without calibration"""
        self.assertLess(elliptic_distance(TEST_CASE_I_A, TEST_CASE_I_B), 1e-5)

    def test_case_one_scaled(self) -> None:
        """A != 1 keeps the turning point r^2 = m and matches the quadrature"""
        r, _ = elliptic_caseI(TEST_CASE_I_WIDE_A, TEST_CASE_I_WIDE_B, 1e-6)
        self.assertAlmostEqual(r * r, 0.5, places=9)
        self.assertLess(elliptic_distance(TEST_CASE_I_WIDE_A, TEST_CASE_I_WIDE_B), 1e-5)

    def test_case_one_near_turning_point(self) -> None:
        """x close to 0 sits close to r^2 = m"""
        r, t = elliptic_caseI(TEST_CASE_I_A, TEST_CASE_I_B, 1e-6)
        self.assertAlmostEqual(r, TEST_CASE_I_R0, places=9)
        self.assertAlmostEqual(t, 0.0, places=5)

    def test_case_two_calibration(self) -> None:
        """Some candidate modulus reproduces the A < 0 meridian"""
        modulus, distances = calibrate_caseII_modulus(TEST_CASE_II_A, TEST_CASE_II_B)
        self.assertTrue(0.0 <= modulus < 1.0)
        self.assertLess(min(distances.values()), 1e-4)
        self.assertIn("0", distances)
