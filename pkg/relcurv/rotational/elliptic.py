"""Meridians of constant relative sectional curvature through Legendre integrals.

With u^2 = A r^2 + B put

    m = (sqrt(B^2 + 4A) - B) / (2A),   m' = (sqrt(B^2 + 4A) + B) / (2A),

so that m m' = 1/A and m' - m = B/A. For A > 0 the branch through the
turning point r^2 = m is

    r^2 = (1 - x^2) / (A m) - B/A,
    t   = -(J1 - J2) / (A m sqrt(m + m')),      modulus^2 = m' / (m + m'),

and for A < 0 (with B^2 + 4A >= 0) the branch between r^2 = -B/A and the
turning point is

    r^2 = -x^2 / (m' A) - B/A,
    t   = J2 / (A (-m')^(3/2)),                 modulus^2 = -m / m'.

J1 and J2 are the incomplete integrals of the first kind and of x^2 against
the same weight, both taken from 0 to x.
"""
from __future__ import annotations

import logging
import math

import attr
import numpy as np
from scipy import integrate, special

from ..const import LEGENDRE_EPSABS
from ..exceptions import (
    DiscriminantNegative,
    DomainViolation,
    ModulusOutOfRange,
    VerificationFailure,
)
from .meridian import aligned_distance, turning_distance

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True)
class EllipticParams:
    """Constants of the elliptic parameterization of an (A, B) meridian."""

    big_a: float = attr.ib()
    big_b: float = attr.ib()
    m: float = attr.ib()
    m_prime: float = attr.ib()
    modulus: float = attr.ib()

    @property
    def product_residual(self) -> float:
        """|m m' - 1/A|."""
        return abs(self.m * self.m_prime - 1.0 / self.big_a)

    @property
    def difference_residual(self) -> float:
        """|m' - m - B/A|."""
        return abs(self.m_prime - self.m - self.big_b / self.big_a)


def elliptic_params(big_a: float, big_b: float) -> EllipticParams:
    """m, m' and the modulus of the branch selected by the sign of A.

    Raises:
        DiscriminantNegative: B^2 + 4A < 0
        DomainViolation: A = 0 (the circle case has no elliptic form)
    """
    if big_a == 0.0:
        raise DomainViolation("A = 0 has no elliptic parameterization")
    disc = big_b * big_b + 4.0 * big_a
    if disc < 0.0:
        raise DiscriminantNegative(f"B^2 + 4A = {disc:.6g} < 0")
    root = math.sqrt(disc)
    m = (root - big_b) / (2.0 * big_a)
    m_prime = (root + big_b) / (2.0 * big_a)
    if big_a > 0:
        modulus = math.sqrt(m_prime / (m + m_prime))
    else:
        modulus = math.sqrt(-m / m_prime) if m_prime != 0.0 else math.inf
    return EllipticParams(big_a=big_a, big_b=big_b, m=m, m_prime=m_prime, modulus=modulus)


def _check_modulus(x: float, modulus: float) -> None:
    if not 0.0 <= x <= 1.0:
        raise ModulusOutOfRange(f"argument x={x} outside [0, 1]")
    if not 0.0 <= modulus < 1.0:
        raise ModulusOutOfRange(f"modulus {modulus} outside [0, 1)")


def legendre_integrals(x: float, modulus: float):
    """J1 = int_0^x dx / w and J2 = int_0^x x^2 dx / w, w = sqrt((1 - x^2)(1 - k^2 x^2)).

    Evaluated in the angle phi = arcsin x, where both integrands are smooth,
    so x = 1 gives the complete integrals.

    Raises:
        ModulusOutOfRange: x outside [0, 1] or modulus outside [0, 1)
    """
    _check_modulus(x, modulus)
    if x == 0.0:
        return 0.0, 0.0
    phi = math.asin(x)
    k2 = modulus * modulus

    def first(angle):
        return 1.0 / math.sqrt(1.0 - k2 * math.sin(angle) ** 2)

    def second(angle):
        return math.sin(angle) ** 2 / math.sqrt(1.0 - k2 * math.sin(angle) ** 2)

    return _quad_legendre(first, phi), _quad_legendre(second, phi)


def _quad_legendre(func, phi: float) -> float:
    value, _ = integrate.quad(func, 0.0, phi, epsabs=LEGENDRE_EPSABS, epsrel=LEGENDRE_EPSABS)
    return value


def legendre_reference(x: float, modulus: float):
    """J1, J2 from scipy's incomplete elliptic integrals F and E."""
    _check_modulus(x, modulus)
    phi = math.asin(x)
    k2 = modulus * modulus
    first = float(special.ellipkinc(phi, k2))
    if k2 == 0.0:
        return first, 0.5 * (phi - math.sin(phi) * math.cos(phi))
    return first, (first - float(special.ellipeinc(phi, k2))) / k2


def elliptic_caseI(big_a: float, big_b: float, x: float):
    """Meridian point (r, t) at parameter x for A > 0.

    Raises:
        DomainViolation: A <= 0 or r^2 <= 0 at x
    """
    if big_a <= 0:
        raise DomainViolation(f"case I needs A > 0, got {big_a}")
    params = elliptic_params(big_a, big_b)
    if not 0.0 < x < 1.0:
        raise DomainViolation(f"case I needs 0 < x < 1, got {x}")
    r2 = (1.0 - x * x) / (big_a * params.m) - big_b / big_a
    if r2 <= 0.0:
        raise DomainViolation(f"r^2 = {r2:.6g} at x={x}")
    j1, j2 = legendre_integrals(x, params.modulus)
    t = -(j1 - j2) / (big_a * params.m * math.sqrt(params.m + params.m_prime))
    return math.sqrt(r2), t


def elliptic_caseII(big_a: float, big_b: float, x: float, modulus: float | None = None):
    """Meridian point (r, t) at parameter x for A < 0.

    Args:
        modulus (float, optional): overrides the modulus sqrt(-m/m'); used by
            `calibrate_caseII_modulus`

    Raises:
        DiscriminantNegative: B^2 + 4A < 0
        DomainViolation: A >= 0 or r^2 <= 0 at x
    """
    if big_a >= 0:
        raise DomainViolation(f"case II needs A < 0, got {big_a}")
    params = elliptic_params(big_a, big_b)
    if not 0.0 < x < 1.0:
        raise DomainViolation(f"case II needs 0 < x < 1, got {x}")
    r2 = -x * x / (params.m_prime * big_a) - big_b / big_a
    if r2 <= 0.0:
        raise DomainViolation(f"r^2 = {r2:.6g} at x={x}")
    modulus = params.modulus if modulus is None else modulus
    _, j2 = legendre_integrals(x, modulus)
    t = j2 / (big_a * (-params.m_prime) ** 1.5)
    return math.sqrt(r2), t


def turning_radius(params: EllipticParams) -> float:
    """Radius of the turning point reached at x = 0 (case I) or x = 1 (case II)."""
    if params.big_a > 0:
        return math.sqrt(params.m)
    return math.sqrt(-1.0 / (params.m_prime * params.big_a) - params.big_b / params.big_a)


def parameter_limit(params: EllipticParams) -> float:
    """Largest x with r^2 > 0 (case I reaches r = 0 at x^2 = 1 - B m when B > 0)."""
    if params.big_a > 0 and params.big_b > 0:
        return math.sqrt(max(0.0, 1.0 - params.big_b * params.m))
    return 1.0


def elliptic_curve(big_a: float, big_b: float, xs, modulus: float | None = None):
    """Arrays (r, t) of the elliptic parameterization at the parameters xs."""
    if big_a > 0:
        points = [elliptic_caseI(big_a, big_b, float(x)) for x in xs]
    else:
        points = [elliptic_caseII(big_a, big_b, float(x), modulus) for x in xs]
    points = np.array(points)
    return points[:, 0], points[:, 1]


def elliptic_distance(big_a: float, big_b: float, xs=None, modulus: float | None = None) -> float:
    """Distance between the elliptic meridian of (A, B) and its quadrature,
    t matched up to translation and reflection."""
    params = elliptic_params(big_a, big_b)
    if xs is None:
        xs = np.linspace(0.02, 0.98, 25) * parameter_limit(params)
    xs = np.asarray(xs, dtype=float)
    r, t = elliptic_curve(big_a, big_b, xs, modulus)
    from_turn = turning_distance(big_a, big_b, r, turning_radius(params))
    return aligned_distance(t, from_turn)


def caseII_modulus_candidates(params: EllipticParams) -> dict:
    """Moduli suggested by the case I pattern and by the roots m, m'."""
    m, mp = params.m, params.m_prime
    raw = {
        "sqrt(-m/m')": -m / mp,
        "sqrt(m'/(m+m'))": mp / (m + mp),
        "sqrt(m/(m-m'))": m / (m - mp),
        "sqrt(-m'/(m-m'))": -mp / (m - mp),
        "0": 0.0,
    }
    return {name: math.sqrt(value) for name, value in raw.items() if 0.0 <= value < 1.0}


def calibrate_caseII_modulus(big_a: float, big_b: float, tolerance: float = 1e-4):
    """Pick the case II modulus that reproduces the quadrature meridian.

    Returns:
        tuple: (modulus, distances) with distances keyed by candidate name

    Raises:
        VerificationFailure: no candidate matches within tolerance
    """
    params = elliptic_params(big_a, big_b)
    distances = {}
    for name, modulus in caseII_modulus_candidates(params).items():
        distances[name] = elliptic_distance(big_a, big_b, modulus=modulus)
        _LOGGER.debug("Case II modulus %s = %.12g: distance %.3e", name, modulus, distances[name])
    best = min(distances, key=distances.get)
    if distances[best] > tolerance:
        raise VerificationFailure(
            f"no case II modulus matches the quadrature (best {best}: {distances[best]:.3e})"
        )
    _LOGGER.info("Case II modulus for A=%s B=%s: %s", big_a, big_b, best)
    return caseII_modulus_candidates(params)[best], distances
