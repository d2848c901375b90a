"""Relative sectional curvature of Riemannian metrics.

Curvature tensors and their covariant derivatives on metric charts, the
classification of directed manifolds of pointwise constant relative sectional
curvature, and the rotational hypersurfaces whose meridians realize them.
"""
from .charts import MetricSpec, evaluate_metric_jet
from .config import RunConfig, load_config, parse_config
from .const import VERSION
from .directed import (
    DirectedReport,
    Tolerances,
    TwoPlane,
    constant_relcurv_test,
    directedness_report,
    relative_curvature,
    sectional_one_form,
)
from .exceptions import RelCurvError
from .pipeline import curvature_at
from .profile import ProfileCurve
from .tensorcalc import ChartPoint, CurvatureBundle, MetricJet

__version__ = VERSION

__all__ = [
    "ChartPoint",
    "CurvatureBundle",
    "DirectedReport",
    "MetricJet",
    "MetricSpec",
    "ProfileCurve",
    "RelCurvError",
    "RunConfig",
    "Tolerances",
    "TwoPlane",
    "constant_relcurv_test",
    "curvature_at",
    "directedness_report",
    "evaluate_metric_jet",
    "load_config",
    "parse_config",
    "relative_curvature",
    "sectional_one_form",
]
