"""Euclidean space in Cartesian coordinates."""
from __future__ import annotations

import numpy as np

from ..const import ANALYTIC, FLAT
from ..tensorcalc.jet import MetricJet
from . import Chart, MetricSpec


class FlatChart(Chart):
    """g = identity."""

    def metric(self, coords: np.ndarray) -> np.ndarray:
        return np.eye(self.dim)

    def jet(self, coords: np.ndarray) -> MetricJet:
        return MetricJet.constant(np.eye(self.dim))


def flat_spec(dim: int, jet_mode: str = ANALYTIC) -> MetricSpec:
    """MetricSpec of flat R^n."""
    return MetricSpec(family=FLAT, chart=FlatChart(dim), jet_mode=jet_mode)
