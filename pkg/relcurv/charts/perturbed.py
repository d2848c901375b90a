"""Seeded smooth perturbations of a chart and user supplied metrics."""
from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from ..const import CUSTOM, FINITE_DIFFERENCE
from ..exceptions import ConfigSemantic
from ..tensorcalc.jet import MetricJet
from . import Chart, MetricSpec

_LOGGER = logging.getLogger(__name__)


def _mirror_upper(arr: np.ndarray) -> np.ndarray:
    """Copy entries (i, j), i < j, onto (j, i) along the first two axes."""
    out = np.array(arr)
    upper = np.triu_indices(out.shape[0], 1)
    out[upper[1], upper[0]] = out[upper[0], upper[1]]
    return out


class PerturbedChart(Chart):
    """g + amplitude * P with P_ij = A_ij sin(w_ij . x + phase_ij).

    A, w and the phases are drawn once from a seeded generator; P is
    symmetric in (i, j), so analytic jets stay available whenever the base
    chart has them.
    """

    def __init__(self, base: Chart, amplitude: float, seed: int) -> None:
        """Initialize perturbation of base."""
        super().__init__(base.dim)
        n = base.dim
        rng = np.random.default_rng(seed)
        weights = rng.uniform(-1.0, 1.0, size=(n, n))
        freqs = rng.uniform(-2.0, 2.0, size=(n, n, n))
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(n, n))

        self.base = base
        self.amplitude = amplitude
        self.seed = seed
        self.__weights = _mirror_upper(weights)
        self.__freqs = _mirror_upper(freqs)
        self.__phases = _mirror_upper(phases)

    @property
    def analytic(self) -> bool:
        return self.base.analytic

    def contains(self, coords: np.ndarray) -> bool:
        return self.base.contains(coords)

    def _angles(self, coords: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,k->ij", self.__freqs, coords) + self.__phases

    def metric(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        bump = self.__weights * np.sin(self._angles(coords))
        return self.base.metric(coords) + self.amplitude * bump

    def jet(self, coords: np.ndarray) -> MetricJet:
        coords = np.asarray(coords, dtype=float)
        base = self.base.jet(coords)
        angles = self._angles(coords)
        amp = self.amplitude * self.__weights
        w = self.__freqs
        sin, cos = np.sin(angles), np.cos(angles)
        return MetricJet(
            g=base.g + amp * sin,
            dg=base.dg + np.einsum("ij,ij,ijk->ijk", amp, cos, w),
            d2g=base.d2g - np.einsum("ij,ij,ijk,ijl->ijkl", amp, sin, w, w),
            d3g=base.d3g - np.einsum("ij,ij,ijk,ijl,ijm->ijklm", amp, cos, w, w, w),
        )


def perturbed_spec(base: MetricSpec, amplitude: float, seed: int) -> MetricSpec:
    """Custom family spec of base plus a seeded perturbation of the given amplitude."""
    if not amplitude >= 0:
        raise ConfigSemantic(f"perturbation amplitude must be nonnegative, got {amplitude}")
    chart = PerturbedChart(base.chart, amplitude, seed)
    _LOGGER.debug("Perturbing %s chart (amplitude %s, seed %s)", base.family, amplitude, seed)
    return MetricSpec(
        family=CUSTOM,
        chart=chart,
        params={**base.params, "base": base.family, "amplitude": amplitude, "seed": seed},
        jet_mode=base.jet_mode if chart.analytic else FINITE_DIFFERENCE,
        fd_order=base.fd_order,
    )


class CallableChart(Chart):
    """Chart of a plain metric evaluator; jets come from finite differences."""

    def __init__(
        self,
        metric: Callable[[np.ndarray], np.ndarray],
        dim: int,
        domain: Callable[[np.ndarray], bool] | None = None,
    ) -> None:
        """Initialize chart from callables."""
        super().__init__(dim)
        self.__metric = metric
        self.__domain = domain

    def contains(self, coords: np.ndarray) -> bool:
        return True if self.__domain is None else bool(self.__domain(coords))

    def metric(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(self.__metric(np.asarray(coords, dtype=float)), dtype=float)


def custom_spec(
    metric: Callable[[np.ndarray], np.ndarray],
    dim: int,
    domain: Callable[[np.ndarray], bool] | None = None,
    fd_order: int = 3,
) -> MetricSpec:
    """Custom family spec of a metric evaluator (finite difference jets)."""
    return MetricSpec(
        family=CUSTOM,
        chart=CallableChart(metric, dim, domain),
        jet_mode=FINITE_DIFFERENCE,
        fd_order=fd_order,
    )


__all__ = ["CallableChart", "PerturbedChart", "custom_spec", "perturbed_spec"]
