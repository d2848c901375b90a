"""Warped product charts r(t)^2 g_sphere + (1 + r'(t)^2) dt^2."""
from __future__ import annotations

import itertools
import logging

import numpy as np

from ..const import ANALYTIC, ROTATIONAL
from ..profile import ProfileCurve
from ..tensorcalc.jet import MetricJet
from . import Chart, MetricSpec

_LOGGER = logging.getLogger(__name__)


def stereographic_factor(u: np.ndarray) -> list:
    """s(u) = 4 / (1 + |u|^2)^2 and its partial derivatives to order three.

    Returns:
        list: [s, ds, d2s, d3s] with shapes (), (m,), (m, m), (m, m, m)
    """
    u = np.asarray(u, dtype=float)
    m = u.size
    q = 1.0 + float(u @ u)
    eye = np.eye(m)
    s = 4.0 / q ** 2
    ds = -16.0 * u / q ** 3
    d2s = -16.0 * eye / q ** 3 + 96.0 * np.outer(u, u) / q ** 4
    d3s = 96.0 / q ** 4 * (
        np.einsum("ab,c->abc", eye, u)
        + np.einsum("ac,b->abc", eye, u)
        + np.einsum("bc,a->abc", eye, u)
    ) - 768.0 * np.einsum("a,b,c->abc", u, u, u) / q ** 5
    return [np.asarray(s), ds, d2s, d3s]


def separable_jet(s_jets: list, p_jets: list, f_jets: list | None = None) -> MetricJet:
    """Jet of g = P(t) s(u) delta on u-coordinates (+ f(t) dt^2 when f_jets is given).

    The t coordinate, when present, is the last one. Each derivative of the
    conformal block is P^(number of t slots) times the u-partials of s.
    """
    m = s_jets[1].size
    n = m + (0 if f_jets is None else 1)
    t_axis = n - 1 if f_jets is not None else None
    conformal = np.zeros((n, n))
    conformal[:m, :m] = np.eye(m)
    tt = np.zeros((n, n))
    if t_axis is not None:
        tt[t_axis, t_axis] = 1.0

    arrays = []
    for order in range(4):
        arr = np.zeros((n, n) + (n,) * order)
        for axes in itertools.product(range(n), repeat=order):
            t_count = sum(1 for axis in axes if axis == t_axis)
            u_axes = tuple(axis for axis in axes if axis != t_axis)
            value = p_jets[t_count] * s_jets[len(u_axes)][u_axes] * conformal
            if t_axis is not None and t_count == order:
                value = value + f_jets[order] * tt
            arr[(slice(None), slice(None)) + axes] = value
        arrays.append(arr)
    return MetricJet(g=arrays[0], dg=arrays[1], d2g=arrays[2], d3g=arrays[3])


class WarpedChart(Chart):
    """Rotational hypersurface chart (u^1, ..., u^(n-1), t) of a profile."""

    def __init__(self, profile: ProfileCurve, dim: int) -> None:
        """Initialize chart of the hypersurface of dimension dim generated by profile."""
        super().__init__(dim)
        self.__profile = profile

    @property
    def profile(self) -> ProfileCurve:
        """Meridian profile."""
        return self.__profile

    def contains(self, coords: np.ndarray) -> bool:
        t = float(coords[-1])
        return self.__profile.contains(t) and self.__profile.r(t) > 0.0

    def metric(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=float)
        d = self.__profile.derivatives(coords[-1])
        u = coords[:-1]
        g = np.zeros((self.dim, self.dim))
        g[:-1, :-1] = d.r ** 2 * 4.0 / (1.0 + float(u @ u)) ** 2 * np.eye(self.dim - 1)
        g[-1, -1] = d.f
        return g

    def jet(self, coords: np.ndarray) -> MetricJet:
        coords = np.asarray(coords, dtype=float)
        d = self.__profile.derivatives(coords[-1])
        r, r1, r2, r3, r4 = d.r, d.r1, d.r2, d.r3, d.r4
        p_jets = [
            r * r,
            2.0 * r * r1,
            2.0 * (r1 * r1 + r * r2),
            2.0 * (3.0 * r1 * r2 + r * r3),
        ]
        f_jets = [
            1.0 + r1 * r1,
            2.0 * r1 * r2,
            2.0 * (r2 * r2 + r1 * r3),
            2.0 * (3.0 * r2 * r3 + r1 * r4),
        ]
        return separable_jet(stereographic_factor(coords[:-1]), p_jets, f_jets)

    def axial_form(self, coords: np.ndarray) -> np.ndarray:
        """Unit 1-form eta = sqrt(1 + r'^2) dt, dual to the t-increasing unit normal field."""
        d = self.__profile.derivatives(coords[-1])
        eta = np.zeros(self.dim)
        eta[-1] = np.sqrt(d.f)
        return eta


def rotational_spec(profile: ProfileCurve, dim: int, jet_mode: str = ANALYTIC) -> MetricSpec:
    """MetricSpec of the rotational hypersurface of profile."""
    return MetricSpec(
        family=ROTATIONAL,
        chart=WarpedChart(profile, dim),
        params={"profile": profile.tag, **profile.params},
        jet_mode=jet_mode,
    )
