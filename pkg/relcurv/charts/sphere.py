"""Round sphere of radius rho in stereographic or (n = 2) spherical coordinates."""
from __future__ import annotations

import logging
import math

import numpy as np

from ..const import ANALYTIC, SPHERE, SPHERICAL, STEREOGRAPHIC
from ..exceptions import ConfigSemantic
from ..tensorcalc.jet import MetricJet
from . import Chart, MetricSpec
from .warped import separable_jet, stereographic_factor

_LOGGER = logging.getLogger(__name__)


class StereographicChart(Chart):
    """rho^2 * 4 delta / (1 + |u|^2)^2, the sphere minus one pole."""

    def __init__(self, dim: int, radius: float) -> None:
        """Initialize chart of the n-sphere of the given radius."""
        super().__init__(dim)
        self.radius = radius

    def metric(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        q = 1.0 + float(coords @ coords)
        return self.radius ** 2 * 4.0 / q ** 2 * np.eye(self.dim)

    def jet(self, coords: np.ndarray) -> MetricJet:
        rho2 = self.radius ** 2
        return separable_jet(stereographic_factor(coords), [rho2, 0.0, 0.0, 0.0])


class SphericalChart(Chart):
    """rho^2 (d theta^2 + sin^2 theta d phi^2) on 0 < theta < pi."""

    def __init__(self, radius: float) -> None:
        """Initialize chart of the 2-sphere of the given radius."""
        super().__init__(2)
        self.radius = radius

    def contains(self, coords: np.ndarray) -> bool:
        return 0.0 < float(coords[0]) < math.pi

    def metric(self, coords: np.ndarray) -> np.ndarray:
        theta = float(coords[0])
        return self.radius ** 2 * np.diag([1.0, math.sin(theta) ** 2])

    def jet(self, coords: np.ndarray) -> MetricJet:
        theta = float(coords[0])
        rho2 = self.radius ** 2
        sin2 = math.sin(2.0 * theta)
        # d^k/dtheta^k of sin^2 theta for k = 0..3
        phiphi = (math.sin(theta) ** 2, sin2, 2.0 * math.cos(2.0 * theta), -4.0 * sin2)
        arrays = []
        for order, value in enumerate(phiphi):
            arr = np.zeros((2, 2) + (2,) * order)
            arr[(1, 1) + (0,) * order] = rho2 * value
            arrays.append(arr)
        arrays[0][0, 0] = rho2
        return MetricJet(g=arrays[0], dg=arrays[1], d2g=arrays[2], d3g=arrays[3])


def sphere_spec(
    dim: int,
    radius: float = 1.0,
    chart: str = STEREOGRAPHIC,
    jet_mode: str = ANALYTIC,
) -> MetricSpec:
    """MetricSpec of the round n-sphere.

    Raises:
        ConfigSemantic: radius not positive, or spherical chart with dim != 2
    """
    if not radius > 0:
        raise ConfigSemantic(f"sphere radius must be positive, got {radius}")
    if chart == STEREOGRAPHIC:
        sphere_chart = StereographicChart(dim, radius)
    elif chart == SPHERICAL:
        if dim != 2:
            raise ConfigSemantic("spherical coordinates are only provided for n = 2")
        sphere_chart = SphericalChart(radius)
    else:
        raise ConfigSemantic(f"unknown sphere chart '{chart}'")
    return MetricSpec(
        family=SPHERE,
        chart=sphere_chart,
        params={"radius": radius, "chart": chart},
        jet_mode=jet_mode,
    )
