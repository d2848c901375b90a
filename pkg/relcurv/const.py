"""Constances of relcurv."""
from __future__ import annotations

import sys
from typing import Final

VERSION: Final = "0.1.0"

NAME: Final = "relcurv"

# metric families
FLAT: Final = "flat"
SPHERE: Final = "sphere"
ROTATIONAL: Final = "rotational"
CUSTOM: Final = "custom"

FAMILIES: Final = (FLAT, SPHERE, ROTATIONAL, CUSTOM)

# jet providers
ANALYTIC: Final = "analytic"
FINITE_DIFFERENCE: Final = "finite-difference"

JET_MODES: Final = (ANALYTIC, FINITE_DIFFERENCE)

# sphere charts
STEREOGRAPHIC: Final = "stereographic"
SPHERICAL: Final = "spherical"

SPHERE_CHARTS: Final = (STEREOGRAPHIC, SPHERICAL)

# profile families
PROFILE_CONSTANT: Final = "constant"
PROFILE_CIRCLE: Final = "circle"
PROFILE_COSH: Final = "cosh"
PROFILE_ODE: Final = "ode-generated"
PROFILE_CUSTOM: Final = "custom"

PROFILE_TAGS: Final = (
    PROFILE_CONSTANT,
    PROFILE_CIRCLE,
    PROFILE_COSH,
    PROFILE_ODE,
    PROFILE_CUSTOM,
)

# unit field provenance
FIELD_FROM_DTAU: Final = "from-dtau"
FIELD_PROFILE_AXIAL: Final = "profile-axial"
FIELD_CUSTOM: Final = "custom"

FIELD_TAGS: Final = (FIELD_FROM_DTAU, FIELD_PROFILE_AXIAL, FIELD_CUSTOM)

MIN_DIM: Final = 2
MAX_DIM: Final = 6

MACHINE_EPS: Final = sys.float_info.epsilon

# metric checks
POSITIVE_DEFINITE_MIN_EIGENVALUE: Final = 1e-12
UNIT_TOLERANCE: Final = 1e-10
ORTHONORMAL_TOLERANCE: Final = 1e-12

# finite differences
FD_DEFAULT_ORDER: Final = 3
FIELD_FD_STEP: Final = 1e-5
TAU_FD_STEP: Final = 1e-5

# classifier tolerances (relative)
ANALYTIC_TOLERANCE: Final = 1e-6
FINITE_DIFFERENCE_TOLERANCE: Final = 1e-3
LOCALLY_SYMMETRIC_TOLERANCE: Final = 1e-9
SCALAR_GRADIENT_TOLERANCE: Final = 1e-9
IDENTITY_TOLERANCE: Final = 1e-9
RESIDUAL_FLOOR: Final = 1e-14
ETA_CONTINUITY_TOLERANCE: Final = 1e-2

# distribution checks
LEAF_STEP: Final = 1e-3
UMBILIC_TOLERANCE: Final = 1e-8
LEAF_SPREAD_TOLERANCE: Final = 1e-6
HYPOTHESIS_TOLERANCE: Final = 1e-6
SURFACE_TOLERANCE: Final = 1e-6
CONSTANT_FIT_SPREAD_TOLERANCE: Final = 1e-4

# plane sampling
DEFAULT_SEED: Final = 42
DEFAULT_PLANES_PER_POINT: Final = 64
MIN_PLANES_PER_POINT: Final = 8

# symmetric space rank check
RANK_RELATIVE_THRESHOLD: Final = 1e-8
RANK_MIN_GAP: Final = 1e6
POLARIZING_RANDOM_PAIRS: Final = 20
RANK_CHECK_MAX_DIM: Final = 4

# meridian integration
ODE_RTOL: Final = 1e-10
ODE_ATOL: Final = 1e-10
ODE_MIN_RADIUS: Final = 1e-6
ODE_MAX_SLOPE: Final = 1e6
ODE_DEFAULT_SAMPLES: Final = 201
QUAD_EPSABS: Final = 1e-13
QUAD_EPSREL: Final = 1e-12
QUAD_LIMIT: Final = 200
LEGENDRE_EPSABS: Final = 1e-14

# integration constant fit
NEAR_SINGULAR_TOLERANCE: Final = 1e-9

# output
CSV_PRECISION: Final = 17
DEFAULT_MESH_RESOLUTION: Final = 64
FORMAT_CSV: Final = "csv"
FORMAT_OBJ: Final = "obj"

MERIDIAN_COLUMNS: Final = ("t", "r", "r_prime", "a", "b", "lambda", "tau", "k")
REPORT_FLAG_COLUMNS: Final = ("locally_symmetric", "directed", "pointwise_constant")
REPORT_VALUE_COLUMNS: Final = (
    "tau",
    "dtau_norm",
    "k_fit",
    "residual_collinearity",
    "residual_delta_planes",
    "residual_theorem24",
)

# commands
CMD_ANALYZE: Final = "analyze"
CMD_MERIDIAN: Final = "meridian"
CMD_VERIFY: Final = "verify"
CMD_LEMMA23: Final = "lemma23"
CMD_EXPORT_MESH: Final = "export-mesh"

COMMANDS: Final = (CMD_ANALYZE, CMD_MERIDIAN, CMD_VERIFY, CMD_LEMMA23, CMD_EXPORT_MESH)

# verify checks that may not apply to a configuration
CHECK_MERIDIAN_QUADRATURE: Final = "meridian-quadrature"
CHECK_ELLIPTIC: Final = "elliptic"

OPTIONAL_CHECKS: Final = (CHECK_MERIDIAN_QUADRATURE, CHECK_ELLIPTIC)

# exit codes
EXIT_OK: Final = 0
EXIT_VERIFICATION: Final = 1
EXIT_CONFIG: Final = 2
EXIT_NUMERICAL: Final = 3
