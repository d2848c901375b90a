"""Chart points and metric jets."""
from __future__ import annotations

import logging

import attr
import numpy as np

from ..const import MAX_DIM, MIN_DIM, POSITIVE_DEFINITE_MIN_EIGENVALUE
from ..exceptions import DegenerateMetric, JetOrderInsufficient, OutOfDomain

_LOGGER = logging.getLogger(__name__)


def _as_vector(value) -> np.ndarray:
    """Convert coordinates into read-only float vector."""
    vec = np.array(value, dtype=float).reshape(-1)
    vec.setflags(write=False)
    return vec


def _frozen(value) -> np.ndarray | None:
    """Copy array and lock it."""
    if value is None:
        return None
    arr = np.array(value, dtype=float)
    arr.setflags(write=False)
    return arr


@attr.s(slots=True, frozen=True, eq=False)
class ChartPoint:
    """Point p of the manifold given by chart coordinates."""

    coords: np.ndarray = attr.ib(converter=_as_vector)

    @coords.validator
    def _check_coords(self, attribute, value) -> None:
        if value.size < MIN_DIM:
            raise OutOfDomain(f"chart point needs at least {MIN_DIM} coordinates")
        if not np.all(np.isfinite(value)):
            raise OutOfDomain(f"chart point {value.tolist()} is not finite")

    @property
    def dim(self) -> int:
        """Dimension n of the chart."""
        return int(self.coords.size)

    def shifted(self, axis: int, step: float) -> ChartPoint:
        """Point moved by step along one coordinate axis."""
        coords = np.array(self.coords)
        coords[axis] += step
        return ChartPoint(coords)

    def moved(self, delta: np.ndarray) -> ChartPoint:
        """Point moved by a coordinate vector."""
        return ChartPoint(self.coords + np.asarray(delta, dtype=float))


@attr.s(slots=True, frozen=True, eq=False)
class MetricJet:
    """Metric components and partial derivatives at a chart point.

    Derivative indices are stored last: dg[i, j, k] is the k-th partial
    derivative of g_ij, d2g[i, j, k, l] the (k, l) second partial and so on.
    Missing orders are None.
    """

    g: np.ndarray = attr.ib(converter=_frozen)
    dg: np.ndarray = attr.ib(converter=_frozen)
    d2g: np.ndarray | None = attr.ib(default=None, converter=_frozen)
    d3g: np.ndarray | None = attr.ib(default=None, converter=_frozen)

    def __attrs_post_init__(self) -> None:
        """Validate shapes, symmetry and positive definiteness."""
        n = self.g.shape[0]
        if self.g.shape != (n, n) or not MIN_DIM <= n <= MAX_DIM:
            raise DegenerateMetric(f"metric has unsupported shape {self.g.shape}")

        for order, arr in enumerate((self.dg, self.d2g, self.d3g), start=1):
            if arr is not None and arr.shape != (n,) * (order + 2):
                raise DegenerateMetric(f"order {order} jet has shape {arr.shape}")

        if not np.all(np.isfinite(self.g)):
            raise DegenerateMetric("metric has non finite entries")

        scale = max(1.0, float(np.max(np.abs(self.g))))
        if np.max(np.abs(self.g - self.g.T)) > 1e-12 * scale:
            raise DegenerateMetric("metric is not symmetric")

        smallest = float(np.linalg.eigvalsh(self.g)[0])
        if smallest <= POSITIVE_DEFINITE_MIN_EIGENVALUE:
            raise DegenerateMetric(f"metric not positive definite (min eigenvalue {smallest:.3e})")

    @property
    def dim(self) -> int:
        """Dimension n."""
        return int(self.g.shape[0])

    @property
    def order(self) -> int:
        """Highest derivative order available."""
        if self.d3g is not None:
            return 3
        if self.d2g is not None:
            return 2
        return 1

    @property
    def g_inv(self) -> np.ndarray:
        """Inverse metric g^ij."""
        return np.linalg.inv(self.g)

    def require(self, order: int) -> None:
        """Raise when derivatives up to order are not present."""
        if self.order < order:
            raise JetOrderInsufficient(
                f"operation needs metric derivatives of order {order}, jet has {self.order}"
            )

    def scaled(self, factor: float) -> MetricJet:
        """Jet of the homothetic metric factor * g."""
        if factor <= 0:
            raise DegenerateMetric("homothety factor must be positive")
        return MetricJet(
            g=factor * self.g,
            dg=factor * self.dg,
            d2g=None if self.d2g is None else factor * self.d2g,
            d3g=None if self.d3g is None else factor * self.d3g,
        )

    @classmethod
    def constant(cls, g: np.ndarray) -> MetricJet:
        """Jet of a metric with constant components."""
        g = np.asarray(g, dtype=float)
        n = g.shape[0]
        return cls(
            g=g,
            dg=np.zeros((n,) * 3),
            d2g=np.zeros((n,) * 4),
            d3g=np.zeros((n,) * 5),
        )
