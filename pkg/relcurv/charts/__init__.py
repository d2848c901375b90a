"""Metric charts: one module per metric family.

A chart evaluates g on an open coordinate domain and, for the built-in
families, ships closed-form jets up to order three.
"""
from __future__ import annotations

import logging

import attr
import numpy as np

from ..const import (
    ANALYTIC,
    FAMILIES,
    FD_DEFAULT_ORDER,
    FINITE_DIFFERENCE,
    JET_MODES,
    MAX_DIM,
    MIN_DIM,
)
from ..exceptions import ConfigSemantic, JetOrderInsufficient, OutOfDomain
from ..tensorcalc.jet import ChartPoint, MetricJet
from .finite_difference import finite_difference_jet

_LOGGER = logging.getLogger(__name__)


class Chart(object):
    """Coordinate chart carrying a metric.

    Subclasses override `metric` and, when closed forms exist, `jet`.
    """

    def __init__(self, dim: int) -> None:
        """Initialize chart of dimension dim."""
        if not MIN_DIM <= dim <= MAX_DIM:
            raise ConfigSemantic(f"dimension must lie in [{MIN_DIM}, {MAX_DIM}], got {dim}")
        self.__dim = dim

    @property
    def dim(self) -> int:
        """Dimension n of the chart."""
        return self.__dim

    @property
    def analytic(self) -> bool:
        """True when `jet` gives closed-form derivatives."""
        return type(self).jet is not Chart.jet

    def contains(self, coords: np.ndarray) -> bool:
        """Whether coords lie in the chart domain."""
        return True

    def metric(self, coords: np.ndarray) -> np.ndarray:
        """Metric components at coords."""
        raise NotImplementedError

    def jet(self, coords: np.ndarray) -> MetricJet:
        """Closed-form jet at coords."""
        raise JetOrderInsufficient(f"{type(self).__name__} has no closed-form jet")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim})"


@attr.s(slots=True, frozen=True, eq=False)
class MetricSpec:
    """Metric family with its chart and jet provider mode."""

    family: str = attr.ib()
    chart: Chart = attr.ib()
    params: dict = attr.ib(factory=dict)
    jet_mode: str = attr.ib(default=ANALYTIC)
    fd_order: int = attr.ib(default=FD_DEFAULT_ORDER)

    @family.validator
    def _check_family(self, attribute, value) -> None:
        if value not in FAMILIES:
            raise ConfigSemantic(f"unknown metric family '{value}'")

    @jet_mode.validator
    def _check_mode(self, attribute, value) -> None:
        if value not in JET_MODES:
            raise ConfigSemantic(f"unknown jet mode '{value}'")
        if value == ANALYTIC and not self.chart.analytic:
            raise ConfigSemantic(f"{self.family} chart has no analytic jets")

    @fd_order.validator
    def _check_order(self, attribute, value) -> None:
        if not 1 <= value <= 3:
            raise ConfigSemantic(f"finite difference order must be 1, 2 or 3, got {value}")

    @property
    def dim(self) -> int:
        """Dimension n."""
        return self.chart.dim

    def with_mode(self, jet_mode: str, fd_order: int = FD_DEFAULT_ORDER) -> MetricSpec:
        """Same metric with another jet provider."""
        return attr.evolve(self, jet_mode=jet_mode, fd_order=fd_order)


def evaluate_metric_jet(spec: MetricSpec, p: ChartPoint) -> MetricJet:
    """Metric jet of spec at p.

    Args:
        spec (MetricSpec): metric family and jet provider
        p (ChartPoint): point in the chart

    Returns:
        MetricJet: analytic jet to order 3, or the finite difference jet at spec.fd_order

    Raises:
        OutOfDomain: p outside the chart
        DegenerateMetric: g not positive definite
    """
    if p.dim != spec.dim:
        raise OutOfDomain(f"point has {p.dim} coordinates, chart has {spec.dim}")
    if not spec.chart.contains(p.coords):
        raise OutOfDomain(f"point {p.coords.tolist()} outside the {spec.family} chart")

    if spec.jet_mode == FINITE_DIFFERENCE:
        return finite_difference_jet(spec.chart.metric, p, spec.fd_order, spec.chart.contains)
    return spec.chart.jet(p.coords)


__all__ = ["Chart", "MetricSpec", "evaluate_metric_jet", "finite_difference_jet"]
