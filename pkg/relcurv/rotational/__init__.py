"""Rotational hypersurfaces and their constant relative curvature meridians."""
from .elliptic import (
    EllipticParams,
    calibrate_caseII_modulus,
    elliptic_caseI,
    elliptic_caseII,
    elliptic_curve,
    elliptic_distance,
    elliptic_params,
    legendre_integrals,
    legendre_reference,
)
from .hypersurface import (
    RotationalCoefficients,
    ab_coefficients,
    chart_point,
    curvature_identity_check,
    dtau_rotational,
    induced_chart,
    lambda_umbilic,
    nablaR_analytic,
    rotational_coefficients,
    second_fundamental,
    sectional_form_coefficient,
    tau_rotational,
)
from .meridian import (
    MeridianSample,
    MeridianSolution,
    meridian_derivatives,
    meridian_distance,
    meridian_ode,
    meridian_profile,
    meridian_quadrature,
    profile_samples,
    turning_radii,
)

__all__ = [
    "EllipticParams",
    "MeridianSample",
    "MeridianSolution",
    "RotationalCoefficients",
    "ab_coefficients",
    "calibrate_caseII_modulus",
    "chart_point",
    "curvature_identity_check",
    "dtau_rotational",
    "elliptic_caseI",
    "elliptic_caseII",
    "elliptic_curve",
    "elliptic_distance",
    "elliptic_params",
    "induced_chart",
    "lambda_umbilic",
    "legendre_integrals",
    "legendre_reference",
    "meridian_derivatives",
    "meridian_distance",
    "meridian_ode",
    "meridian_profile",
    "meridian_quadrature",
    "nablaR_analytic",
    "profile_samples",
    "rotational_coefficients",
    "second_fundamental",
    "sectional_form_coefficient",
    "tau_rotational",
    "turning_radii",
]
