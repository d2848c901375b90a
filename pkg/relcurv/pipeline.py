"""Curvature of a metric spec at chart points."""
from __future__ import annotations

import logging

import numpy as np

from .charts import MetricSpec, evaluate_metric_jet
from .const import IDENTITY_TOLERANCE, TAU_FD_STEP
from .tensorcalc.curvature import CurvatureBundle, curvature_bundle, ricci_and_scalar, riemann
from .tensorcalc.jet import ChartPoint

_LOGGER = logging.getLogger(__name__)


def curvature_at(
    spec: MetricSpec, p: ChartPoint, tolerance: float = IDENTITY_TOLERANCE
) -> CurvatureBundle:
    """Full curvature bundle of spec at p."""
    return curvature_bundle(evaluate_metric_jet(spec, p), tolerance)


def scalar_curvature(spec: MetricSpec, p: ChartPoint) -> float:
    """tau of spec at p."""
    jet = evaluate_metric_jet(spec, p)
    return ricci_and_scalar(riemann(jet), jet)[1]


def finite_difference_dtau(
    spec: MetricSpec, p: ChartPoint, step: float = TAU_FD_STEP
) -> np.ndarray:
    """Central differences of tau along each coordinate, the oracle for d tau."""
    grad = np.zeros(p.dim)
    for axis in range(p.dim):
        forward = scalar_curvature(spec, p.shifted(axis, step))
        backward = scalar_curvature(spec, p.shifted(axis, -step))
        grad[axis] = (forward - backward) / (2.0 * step)
    return grad
