"""Curvature of rotational hypersurfaces in closed form.

For a meridian r(t) with f = 1 + r'^2 the hypersurface carries

    R = a pi + b Phi,   a = 1 / (r^2 f),   b = -(f + r r'') / (r^2 f^2),

and its unit normal field xi = d_t / sqrt(f) is umbilical along the parallel
spheres with lambda = r' / (r sqrt(f)).
"""
from __future__ import annotations

import logging
import math

import attr
import numpy as np

from ..charts import MetricSpec, evaluate_metric_jet
from ..charts.warped import WarpedChart, rotational_spec
from ..const import ANALYTIC
from ..exceptions import ConstantCurvatureDegeneracy
from ..profile import ProfileCurve, ProfileDerivatives
from ..tensorcalc.curvature import riemann
from ..tensorcalc.jet import ChartPoint, MetricJet
from ..tensorcalc.model import build_phi, build_pi, build_Pi, eta_tensor_phi

_LOGGER = logging.getLogger(__name__)

# |b| below this (relative to |a|) leaves lambda = xi(a) / (2 b) undefined
DEGENERACY_TOLERANCE = 1e-10


@attr.s(slots=True, frozen=True)
class RotationalCoefficients:
    """a, b, their xi-derivatives and lambda at one parameter t."""

    t: float = attr.ib()
    a: float = attr.ib()
    b: float = attr.ib()
    xi_a: float = attr.ib()
    xi_b: float = attr.ib()
    lam: float = attr.ib()

    @property
    def phi_coefficient(self) -> float:
        """xi(b) - 2 b lambda, the eta (x) Phi weight of nabla R."""
        return self.xi_b - 2.0 * self.b * self.lam

    @property
    def sectional_curvature_difference(self) -> float:
        """a - b."""
        return self.a - self.b


def induced_chart(profile: ProfileCurve, n: int, jet_mode: str = ANALYTIC) -> MetricSpec:
    """Warped product chart r^2 g_sphere + (1 + r'^2) dt^2 of dimension n."""
    return rotational_spec(profile, n, jet_mode)


def second_fundamental(profile: ProfileCurve, t: float):
    """Coefficients of h = c_g g - c_etaeta eta (x) eta.

    Returns:
        tuple: (c_g, c_etaeta)
    """
    d = profile.derivatives(t)
    c_g = 1.0 / (d.r * math.sqrt(d.f))
    c_etaeta = (d.f + d.r * d.r2) / (d.r * d.f ** 1.5)
    return c_g, c_etaeta


def _coefficients(d: ProfileDerivatives) -> RotationalCoefficients:
    r, r1, r2, r3, f = d.r, d.r1, d.r2, d.r3, d.f
    a = 1.0 / (r * r * f)
    numer = f + r * r2
    denom = r * r * f * f
    b = -numer / denom

    da = -2.0 * r1 * numer / (r ** 3 * f * f)
    dnumer = 3.0 * r1 * r2 + r * r3
    ddenom = 2.0 * r * r1 * f * (f + 2.0 * r * r2)
    db = -(dnumer * denom - numer * ddenom) / (denom * denom)

    root = math.sqrt(f)
    return RotationalCoefficients(
        t=d.t, a=a, b=b, xi_a=da / root, xi_b=db / root, lam=r1 / (r * root)
    )


def rotational_coefficients(profile: ProfileCurve, t: float) -> RotationalCoefficients:
    """a, b, xi(a), xi(b) and the closed-form lambda at t."""
    return _coefficients(profile.derivatives(t))


def ab_coefficients(profile: ProfileCurve, t: float):
    """(a, b) of R = a pi + b Phi at t."""
    coeffs = rotational_coefficients(profile, t)
    return coeffs.a, coeffs.b


def tau_rotational(profile: ProfileCurve, n: int, t: float) -> float:
    """Scalar curvature (n - 1)(n a + 2 b)."""
    a, b = ab_coefficients(profile, t)
    return (n - 1) * (n * a + 2.0 * b)


def dtau_rotational(profile: ProfileCurve, n: int, t: float) -> float:
    """xi(tau) = (n - 1)(n xi(a) + 2 xi(b)), the norm of d tau up to sign."""
    coeffs = rotational_coefficients(profile, t)
    return (n - 1) * (n * coeffs.xi_a + 2.0 * coeffs.xi_b)


def lambda_umbilic(profile: ProfileCurve, t: float) -> float:
    """lambda = xi(a) / (2 b).

    Raises:
        ConstantCurvatureDegeneracy: b vanishes (use the closed form
            `rotational_coefficients(...).lam` there)
    """
    coeffs = rotational_coefficients(profile, t)
    if abs(coeffs.b) < DEGENERACY_TOLERANCE * max(1.0, abs(coeffs.a)):
        raise ConstantCurvatureDegeneracy(
            f"b = {coeffs.b:.3e} at t={t}, lambda has no quotient form"
        )
    return coeffs.xi_a / (2.0 * coeffs.b)


def chart_point(n: int, t: float, u=None) -> ChartPoint:
    """Warped chart point (u, t); u defaults to the origin of the sphere chart."""
    u = np.zeros(n - 1) if u is None else np.asarray(u, dtype=float)
    return ChartPoint(np.append(u, t))


def _jet_and_eta(profile: ProfileCurve, n: int, t: float, u=None):
    spec = induced_chart(profile, n)
    p = chart_point(n, t, u)
    chart: WarpedChart = spec.chart
    return evaluate_metric_jet(spec, p), chart.axial_form(p.coords)


def model_riemann(jet: MetricJet, eta: np.ndarray, coeffs: RotationalCoefficients) -> np.ndarray:
    """a pi + b Phi."""
    return coeffs.a * build_pi(jet) + coeffs.b * build_phi(jet, eta)


def curvature_identity_check(profile: ProfileCurve, n: int, t: float, u=None) -> float:
    """Max-norm residual of R - (a pi + b Phi) on the induced chart."""
    jet, eta = _jet_and_eta(profile, n, t, u)
    coeffs = rotational_coefficients(profile, t)
    residual = float(np.max(np.abs(riemann(jet) - model_riemann(jet, eta, coeffs))))
    _LOGGER.debug("Curvature identity at t=%s: residual %.3e", t, residual)
    return residual


def nabla_riemann_model(jet: MetricJet, eta: np.ndarray, coeffs: RotationalCoefficients):
    """lambda b Pi(eta) + (xi(b) - 2 b lambda) eta (x) Phi."""
    return coeffs.lam * coeffs.b * build_Pi(eta, jet) + coeffs.phi_coefficient * eta_tensor_phi(
        jet, eta
    )


def nablaR_analytic(profile: ProfileCurve, n: int, t: float, u=None) -> np.ndarray:
    """Closed-form nabla R of the rotational hypersurface at (u, t)."""
    jet, eta = _jet_and_eta(profile, n, t, u)
    return nabla_riemann_model(jet, eta, rotational_coefficients(profile, t))


def sectional_form_coefficient(coeffs: RotationalCoefficients, cos2gamma: float) -> float:
    """Factor c in phi_E = c eta|_E for a plane at angle gamma to xi."""
    return 4.0 * coeffs.lam * coeffs.b + coeffs.phi_coefficient * cos2gamma
