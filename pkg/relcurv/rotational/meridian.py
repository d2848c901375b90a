"""Meridians of constant relative sectional curvature.

The condition a - b = B turns into the second order equation

    r r'' = B r^2 (1 + r'^2)^2 - 2 (1 + r'^2),

whose solutions carry the first integral A = b / r^2, equivalently
a = A r^2 + B. Eliminating t gives the quadrature

    t(r) = int r sqrt(A r^2 + B) / sqrt(1 - A r^4 - B r^2) dr,

singular exactly at the turning points (A r^2 + B) r^2 = 1.
"""
from __future__ import annotations

import logging
import math
import warnings

import attr
import numpy as np
from scipy import integrate

from ..const import (
    NEAR_SINGULAR_TOLERANCE,
    ODE_ATOL,
    ODE_DEFAULT_SAMPLES,
    ODE_MAX_SLOPE,
    ODE_MIN_RADIUS,
    ODE_RTOL,
    PROFILE_ODE,
    QUAD_EPSABS,
    QUAD_EPSREL,
    QUAD_LIMIT,
)
from ..exceptions import (
    DomainExit,
    DomainViolation,
    ProfileDomain,
    QuadratureFailure,
    RadiusCollapse,
    StepFailure,
)
from ..profile import ProfileCurve, ProfileDerivatives
from .hypersurface import _coefficients

_LOGGER = logging.getLogger(__name__)


def _rhs_terms(big_b: float, r: float, v: float):
    """r'' = F(r, v) with the partials needed for r''' and r''''."""
    f = 1.0 + v * v
    acc = big_b * r * f * f - 2.0 * f / r
    f_r = big_b * f * f + 2.0 * f / (r * r)
    f_v = 4.0 * big_b * r * v * f - 4.0 * v / r
    f_rr = -4.0 * f / r ** 3
    f_rv = 4.0 * big_b * v * f + 4.0 * v / (r * r)
    f_vv = 4.0 * big_b * r * (1.0 + 3.0 * v * v) - 4.0 / r
    return acc, f_r, f_v, f_rr, f_rv, f_vv


def meridian_derivatives(big_b: float, t: float, r: float, v: float) -> ProfileDerivatives:
    """r, r', r'', r''', r'''' along the flow of the meridian equation."""
    acc, f_r, f_v, f_rr, f_rv, f_vv = _rhs_terms(big_b, r, v)
    jerk = f_r * v + f_v * acc
    snap = (
        (f_rr * v + f_rv * acc) * v
        + f_r * acc
        + (f_rv * v + f_vv * acc) * acc
        + f_v * jerk
    )
    return ProfileDerivatives(t=t, r=r, r1=v, r2=acc, r3=jerk, r4=snap)


@attr.s(slots=True, frozen=True)
class MeridianSample:
    """One sample of a meridian with its curvature diagnostics."""

    t: float = attr.ib()
    r: float = attr.ib()
    r_prime: float = attr.ib()
    a: float = attr.ib()
    b: float = attr.ib()
    lam: float = attr.ib()
    tau: float = attr.ib()
    k: float = attr.ib()

    def as_row(self) -> tuple:
        """Values in meridian CSV column order."""
        return attr.astuple(self)


@attr.s(slots=True, frozen=True, eq=False)
class MeridianSolution:
    """Sampled solution of the meridian equation with constants A, B."""

    samples: tuple = attr.ib(converter=tuple)
    big_a: float = attr.ib()
    big_b: float = attr.ib()
    dim: int = attr.ib()
    dense: object = attr.ib(default=None, repr=False)
    t_span: tuple = attr.ib(default=None)

    @property
    def t(self) -> np.ndarray:
        """Sample parameters."""
        return np.array([s.t for s in self.samples])

    @property
    def r(self) -> np.ndarray:
        """Sample radii."""
        return np.array([s.r for s in self.samples])

    @property
    def r_prime(self) -> np.ndarray:
        """Sample slopes."""
        return np.array([s.r_prime for s in self.samples])

    def a_spread(self) -> float:
        """Spread of b / r^2 over the samples."""
        values = np.array([s.b / (s.r * s.r) for s in self.samples])
        return float(np.max(values) - np.min(values))

    def difference_residual(self) -> float:
        """max |a - b - B| over the samples."""
        return float(max(abs(s.a - s.b - self.big_b) for s in self.samples))


def _sample(derivatives: ProfileDerivatives, dim: int) -> MeridianSample:
    coeffs = _coefficients(derivatives)
    t, r, v = derivatives.t, derivatives.r, derivatives.r1
    xi_tau = (dim - 1) * (dim * coeffs.xi_a + 2.0 * coeffs.xi_b)
    return MeridianSample(
        t=t,
        r=r,
        r_prime=v,
        a=coeffs.a,
        b=coeffs.b,
        lam=coeffs.lam,
        tau=(dim - 1) * (dim * coeffs.a + 2.0 * coeffs.b),
        k=2.0 * abs(xi_tau) / ((dim - 1) * (dim + 2)),
    )


def meridian_ode(
    big_b: float,
    r0: float,
    v0: float,
    t_span: tuple,
    tol: float = ODE_RTOL,
    dim: int = 3,
    samples: int = ODE_DEFAULT_SAMPLES,
) -> MeridianSolution:
    """Integrate the meridian equation from (r0, v0) with RK45.

    Args:
        big_b (float): constant B = a - b
        r0 (float): initial radius, positive
        v0 (float): initial slope r'
        t_span (tuple): (t0, t1)
        tol (float, optional): relative tolerance; absolute is ODE_ATOL
        dim (int, optional): hypersurface dimension for tau and k diagnostics
        samples (int, optional): number of evenly spaced output samples

    Raises:
        RadiusCollapse: r reached ODE_MIN_RADIUS
        DomainExit: |r'| exceeded ODE_MAX_SLOPE
        StepFailure: integrator could not proceed
    """
    if not r0 > 0:
        raise ProfileDomain(f"initial radius must be positive, got {r0}")

    def rhs(_t, y):
        return [y[1], big_b * y[0] * (1.0 + y[1] ** 2) ** 2 - 2.0 * (1.0 + y[1] ** 2) / y[0]]

    def collapse(_t, y):
        return y[0] - ODE_MIN_RADIUS

    def steep(_t, y):
        return ODE_MAX_SLOPE - abs(y[1])

    collapse.terminal = True
    steep.terminal = True

    t_eval = np.linspace(t_span[0], t_span[1], samples)
    solution = integrate.solve_ivp(
        rhs,
        t_span,
        [r0, v0],
        method="RK45",
        t_eval=t_eval,
        rtol=tol,
        atol=min(tol, ODE_ATOL),
        dense_output=True,
        events=(collapse, steep),
    )
    if solution.status == -1:
        raise StepFailure(f"meridian integration failed: {solution.message}")
    if solution.t_events[0].size:
        raise RadiusCollapse(f"meridian radius collapsed at t={solution.t_events[0][0]:.6g}")
    if solution.t_events[1].size:
        raise DomainExit(f"meridian slope diverged at t={solution.t_events[1][0]:.6g}")

    rows = tuple(
        _sample(meridian_derivatives(big_b, float(t), float(r), float(v)), dim)
        for t, r, v in zip(solution.t, solution.y[0], solution.y[1])
    )
    big_a = rows[0].b / rows[0].r ** 2
    meridian = MeridianSolution(
        samples=rows,
        big_a=big_a,
        big_b=big_b,
        dim=dim,
        dense=solution.sol,
        t_span=tuple(t_span),
    )
    spread = meridian.a_spread()
    if spread > 10.0 * tol * max(1.0, abs(big_a)):
        _LOGGER.warning("A = b/r^2 drifts by %.3e along the meridian", spread)
    _LOGGER.info(
        "Meridian B=%s r0=%s v0=%s: %s samples, A=%.12g", big_b, r0, v0, len(rows), big_a
    )
    return meridian


def meridian_profile(solution: MeridianSolution) -> ProfileCurve:
    """ProfileCurve interpolating an ODE meridian (derivatives from the equation itself)."""
    if solution.dense is None:
        raise ProfileDomain("meridian has no dense output")
    big_b = solution.big_b
    low, high = sorted(solution.t_span)

    def state(t):
        r, v = solution.dense(t)
        return meridian_derivatives(big_b, t, float(r), float(v))

    return ProfileCurve(
        r=lambda t: state(t).r,
        r1=lambda t: state(t).r1,
        r2=lambda t: state(t).r2,
        r3=lambda t: state(t).r3,
        r4=lambda t: state(t).r4,
        domain=(low, high),
        tag=PROFILE_ODE,
        params={"B": big_b, "A": solution.big_a},
    )


def turning_radii(big_a: float, big_b: float) -> list:
    """Positive radii where (A r^2 + B) r^2 = 1."""
    if big_a == 0.0:
        return [1.0 / math.sqrt(big_b)] if big_b > 0 else []
    roots = np.roots([big_a, big_b, -1.0])
    radii = [math.sqrt(x.real) for x in roots if abs(x.imag) < 1e-14 and x.real > 0]
    return sorted(radii)


def _domain_value(big_a: float, big_b: float, r: float) -> float:
    return (big_a * r * r + big_b) * r * r


def _integrand(big_a: float, big_b: float):
    def value(r):
        rest = 1.0 - _domain_value(big_a, big_b, r)
        return r * math.sqrt(big_a * r * r + big_b) / math.sqrt(rest)

    return value


def _regularized(big_a: float, big_b: float, r_end: float, sign: float):
    """Integrand in s for r = r_end - sign * s^2, with the square-root zero cancelled.

    Uses 1 - A r^4 - B r^2 = (r_end - r)(r_end + r)(A r^2 + A r_end^2 + B).
    """

    def value(s):
        r = r_end - sign * s * s
        q = big_a * (r * r + r_end * r_end) + big_b
        return 2.0 * r * math.sqrt(big_a * r * r + big_b) / math.sqrt((r_end + r) * abs(q))

    return value


def _quad(func, low: float, high: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(
                func, low, high, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT
            )
        except (integrate.IntegrationWarning, ValueError, ZeroDivisionError) as err:
            raise QuadratureFailure(f"quadrature on [{low}, {high}] failed: {err}") from err
    return value




def _segment(big_a: float, big_b: float, low: float, high: float, turning: tuple) -> float:
    """int_low^high of the meridian integrand, substituting at turning endpoints."""
    singular_low, singular_high = turning
    if singular_low and singular_high:
        mid = 0.5 * (low + high)
        return _segment(big_a, big_b, low, mid, (True, False)) + _segment(
            big_a, big_b, mid, high, (False, True)
        )
    if singular_low:
        return _quad(_regularized(big_a, big_b, low, -1.0), 0.0, math.sqrt(high - low))
    if singular_high:
        return _quad(_regularized(big_a, big_b, high, 1.0), 0.0, math.sqrt(high - low))
    return _quad(_integrand(big_a, big_b), low, high)


def _check_domain(big_a: float, big_b: float, low: float, high: float) -> tuple:
    """Validate 0 < (A r^2 + B) r^2 < 1 inside [low, high]; flag turning endpoints."""
    if not 0.0 < low < high:
        raise DomainViolation(f"radius range ({low}, {high}) is not a positive interval")
    for r in np.linspace(low, high, 65)[1:-1]:
        value = _domain_value(big_a, big_b, r)
        if not 0.0 < value < 1.0:
            raise DomainViolation(f"(A r^2 + B) r^2 = {value:.6g} at r={r:.6g}")
    flags = []
    for r in (low, high):
        value = _domain_value(big_a, big_b, r)
        if value > 1.0 + NEAR_SINGULAR_TOLERANCE or value < 0.0:
            raise DomainViolation(f"(A r^2 + B) r^2 = {value:.6g} at endpoint r={r:.6g}")
        flags.append(value > 1.0 - NEAR_SINGULAR_TOLERANCE)
    return tuple(flags)


def meridian_quadrature(big_a: float, big_b: float, r_range: tuple, samples: int = 64, radii=None):
    """Samples of t(r), with t = 0 at the lower end of r_range.

    Args:
        big_a (float): constant A
        big_b (float): constant B
        r_range (tuple): (r_low, r_high); either end may be a turning point
        samples (int, optional): number of evenly spaced radii. Defaults to 64.
        radii (array, optional): radii inside r_range to use instead of samples

    Returns:
        tuple: (r, t) arrays

    Raises:
        DomainViolation: (A r^2 + B) r^2 leaves (0, 1) inside the range
        QuadratureFailure: quad did not converge
    """
    low, high = (float(x) for x in r_range)
    turning = _check_domain(big_a, big_b, low, high)
    radii = np.linspace(low, high, samples) if radii is None else np.asarray(radii, dtype=float)
    order = np.argsort(radii, kind="stable")
    ordered = np.clip(radii[order], low, high)

    t_sorted = np.zeros(ordered.size)
    total, previous = 0.0, low
    for index, r in enumerate(ordered):
        if r > previous:
            ends = (turning[0] and previous == low, turning[1] and r == high)
            total += _segment(big_a, big_b, previous, r, ends)
            previous = r
        t_sorted[index] = total

    t_values = np.empty_like(t_sorted)
    t_values[order] = t_sorted
    _LOGGER.debug("Quadrature A=%s B=%s on [%s, %s]: t span %.12g", big_a, big_b, low, high, total)
    return radii, t_values


def aligned_distance(t_a, t_b, signs=(1.0, -1.0)) -> float:
    """Max deviation between t_a and sign * t_b after the best translation."""
    best = math.inf
    for sign in signs:
        offsets = np.asarray(t_a, dtype=float) - sign * np.asarray(t_b, dtype=float)
        best = min(best, 0.5 * float(np.max(offsets) - np.min(offsets)))
    return best


def turning_distance(big_a: float, big_b: float, radii, r_turn: float) -> np.ndarray:
    """|t(r) - t(r_turn)| for radii on one branch ending at the turning radius r_turn."""
    radii = np.asarray(radii, dtype=float)
    if float(np.mean(radii)) <= r_turn:
        inner = np.clip(radii, None, r_turn)
        low = float(np.min(inner))
        radii = np.append(inner, r_turn)
        _, t_values = meridian_quadrature(big_a, big_b, (low, r_turn), radii=radii)
        return t_values[-1] - t_values[:-1]
    inner = np.clip(radii, r_turn, None)
    _, t_values = meridian_quadrature(big_a, big_b, (r_turn, float(np.max(inner))), radii=inner)
    return t_values


def meridian_distance(solution: MeridianSolution) -> float:
    """Distance between an ODE meridian and the quadrature of its (A, B).

    Both are measured from the nearest turning point; t is matched up to
    translation and reflection, and samples on either side of the turning
    point are told apart by the sign of r'.
    """
    big_a, big_b = solution.big_a, solution.big_b
    r, v, t = solution.r, solution.r_prime, solution.t
    candidates = turning_radii(big_a, big_b)
    if not candidates:
        raise DomainViolation(f"no turning point for A={big_a}, B={big_b}")
    r_turn = min(candidates, key=lambda c: float(np.min(np.abs(r - c))))
    upper = float(np.mean(r)) <= r_turn

    from_turn = turning_distance(big_a, big_b, r, r_turn)
    # moving towards an upper turning point means r' > 0 and t below the turning parameter
    side = -np.sign(v) if upper else np.sign(v)
    distance = aligned_distance(t, side * from_turn)
    _LOGGER.info("ODE vs quadrature for A=%.6g B=%.6g: %.3e", big_a, big_b, distance)
    return distance


def profile_samples(profile: ProfileCurve, dim: int, ts) -> tuple:
    """Meridian rows of any profile at the parameters ts."""
    return tuple(_sample(profile.derivatives(float(t)), dim) for t in ts)
