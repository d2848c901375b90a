"""Finite difference jets for charts known only through their metric."""
from __future__ import annotations

import itertools
import logging
from typing import Callable

import numpy as np

from ..const import MACHINE_EPS
from ..exceptions import OutOfDomain
from ..tensorcalc.jet import ChartPoint, MetricJet

_LOGGER = logging.getLogger(__name__)


def step_size(coords: np.ndarray, order: int) -> float:
    """Central difference step h_k = max(1, |x|) * eps^(1 / (k + 2))."""
    return max(1.0, float(np.linalg.norm(coords))) * MACHINE_EPS ** (1.0 / (order + 2))


def _derivative(metric, coords: np.ndarray, axes: tuple, step: float, domain) -> np.ndarray:
    """Mixed partial along axes by the nested central stencil."""
    n = coords.size
    total = np.zeros((n, n))
    for signs in itertools.product((1.0, -1.0), repeat=len(axes)):
        shift = np.zeros(n)
        for sign, axis in zip(signs, axes):
            shift[axis] += sign * step
        point = coords + shift
        if domain is not None and not domain(point):
            raise OutOfDomain(f"difference stencil leaves the chart at {point.tolist()}")
        total += np.prod(signs) * _symmetric(metric(point))
    return total / (2.0 * step) ** len(axes)


def _symmetric(g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    return 0.5 * (g + g.T)


def finite_difference_jet(
    metric: Callable[[np.ndarray], np.ndarray],
    p: ChartPoint,
    order: int = 3,
    domain: Callable[[np.ndarray], bool] | None = None,
) -> MetricJet:
    """Jet of a plain metric evaluator up to order (1 to 3).

    Derivative arrays are filled on sorted index tuples and copied to every
    permutation so they stay symmetric in the derivative slots.
    """
    coords = np.array(p.coords)
    n = coords.size
    try:
        g = _symmetric(metric(coords))
        arrays = []
        for k in range(1, order + 1):
            step = step_size(coords, k)
            arr = np.zeros((n, n) + (n,) * k)
            for axes in itertools.combinations_with_replacement(range(n), k):
                value = _derivative(metric, coords, axes, step, domain)
                for perm in set(itertools.permutations(axes)):
                    arr[(slice(None), slice(None)) + perm] = value
            arrays.append(arr)
    except (ValueError, ZeroDivisionError, FloatingPointError) as err:
        raise OutOfDomain(f"metric not evaluable near {coords.tolist()}: {err}") from err

    _LOGGER.debug("Finite difference jet of order %s at %s", order, coords.tolist())
    arrays.extend([None] * (3 - order))
    return MetricJet(g=g, dg=arrays[0], d2g=arrays[1], d3g=arrays[2])
