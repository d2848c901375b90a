"""Totally umbilical distributions Delta = ker eta.

Delta is totally umbilical when nabla_x xi = lambda x for every x in Delta,
equivalently

    (nabla_X eta)(Y) = lambda (g(X, Y) - eta(X) eta(Y)) + eta(X) theta(Y),

with theta(X) = d eta(xi, X). It is then involutive, d eta = eta ^ theta. On
rotational hypersurfaces the leaves are the parallel spheres of radius r(t).
"""
from __future__ import annotations

import logging
import math
from typing import Callable

import attr
import numpy as np

from .charts import MetricSpec, evaluate_metric_jet
from .charts.sphere import sphere_spec
from .charts.warped import WarpedChart, rotational_spec
from .const import (
    ANALYTIC,
    DEFAULT_SEED,
    FIELD_CUSTOM,
    FIELD_FD_STEP,
    FIELD_FROM_DTAU,
    FIELD_PROFILE_AXIAL,
    FIELD_TAGS,
    HYPOTHESIS_TOLERANCE,
    LEAF_SPREAD_TOLERANCE,
    LEAF_STEP,
    NEAR_SINGULAR_TOLERANCE,
    CONSTANT_FIT_SPREAD_TOLERANCE,
    SURFACE_TOLERANCE,
    UMBILIC_TOLERANCE,
    UNIT_TOLERANCE,
)
from .directed import (
    Tolerances,
    TwoPlane,
    constant_relcurv_test,
    eta_from_dtau,
    sectional_one_form,
)
from .exceptions import (
    ConfigSemantic,
    FieldNotEvaluable,
    GeometryError,
    HypothesisViolated,
    LocallySymmetric,
    NearSingularFit,
    NumericalFailure,
    VerificationFailure,
)
from .pipeline import curvature_at
from .profile import ProfileCurve
from .rotational.hypersurface import (
    chart_point,
    dtau_rotational,
    rotational_coefficients,
    tau_rotational,
)
from .tensorcalc.curvature import christoffel, riemann
from .tensorcalc.frames import (
    check_unit,
    complement_basis,
    covector_norm,
    orthonormal_frame,
    raise_index,
    tensor_max_norm,
    tensor_norm,
    vector_norm,
)
from .tensorcalc.jet import ChartPoint
from .tensorcalc.model import evaluate

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, eq=False)
class UnitField:
    """Unit 1-form eta over the chart of spec, with its dual vector field xi."""

    spec: MetricSpec = attr.ib()
    form: Callable[[ChartPoint], np.ndarray] = attr.ib(repr=False)
    tag: str = attr.ib()

    @tag.validator
    def _check_tag(self, attribute, value) -> None:
        if value not in FIELD_TAGS:
            raise ConfigSemantic(f"unknown unit field provenance '{value}'")

    def eta(self, p: ChartPoint) -> np.ndarray:
        """eta at p.

        Raises:
            FieldNotEvaluable: the field or the metric fails at p
            NotUnit: the evaluator returned a non-unit 1-form
        """
        try:
            eta = np.asarray(self.form(p), dtype=float)
            g = evaluate_metric_jet(self.spec, p).g
        except (GeometryError, NumericalFailure, ArithmeticError, ValueError) as exc:
            raise FieldNotEvaluable(f"{self.tag} field at {p.coords.tolist()}: {exc}") from exc
        check_unit(eta, g, UNIT_TOLERANCE)
        return eta

    def xi(self, p: ChartPoint) -> np.ndarray:
        """Unit vector field g-dual to eta."""
        return raise_index(self.eta(p), evaluate_metric_jet(self.spec, p).g)


def axial_field(profile: ProfileCurve, n: int, jet_mode: str = ANALYTIC) -> UnitField:
    """eta = sqrt(1 + r'^2) dt on the rotational hypersurface of profile."""
    spec = rotational_spec(profile, n, jet_mode)
    chart: WarpedChart = spec.chart
    return UnitField(spec=spec, form=lambda p: chart.axial_form(p.coords), tag=FIELD_PROFILE_AXIAL)


def dtau_field(spec: MetricSpec, tolerances: Tolerances | None = None) -> UnitField:
    """eta = d tau / |d tau| from the curvature pipeline."""
    tolerances = tolerances or Tolerances.for_mode(spec.jet_mode)

    def form(p: ChartPoint) -> np.ndarray:
        bundle = curvature_at(spec, p, tolerances.identity)
        return eta_from_dtau(bundle.dtau, bundle.jet, tolerances.scalar_gradient)

    return UnitField(spec=spec, form=form, tag=FIELD_FROM_DTAU)


def custom_field(spec: MetricSpec, form: Callable[[ChartPoint], np.ndarray]) -> UnitField:
    """User 1-form, normalized with the metric of spec."""

    def unit(p: ChartPoint) -> np.ndarray:
        raw = np.asarray(form(p), dtype=float)
        return raw / covector_norm(raw, evaluate_metric_jet(spec, p).g)

    return UnitField(spec=spec, form=unit, tag=FIELD_CUSTOM)


def _coordinate_derivative(func, p: ChartPoint, step: float) -> np.ndarray:
    """Central differences D[i, ...] = d_i func at p."""
    rows = []
    for axis in range(p.dim):
        forward = np.asarray(func(p.shifted(axis, step)), dtype=float)
        backward = np.asarray(func(p.shifted(axis, -step)), dtype=float)
        rows.append((forward - backward) / (2.0 * step))
    return np.array(rows)


def _d_eta(field: UnitField, p: ChartPoint, step: float):
    """(partial eta, d eta) with d eta_ij = d_i eta_j - d_j eta_i."""
    partial = _coordinate_derivative(field.eta, p, step)
    return partial, partial - partial.T


def theta_form(field: UnitField, p: ChartPoint, step: float = FIELD_FD_STEP) -> np.ndarray:
    """theta(X) = d eta(xi, X).

    Raises:
        FieldNotEvaluable: eta unavailable near p
    """
    _, d_eta = _d_eta(field, p, step)
    return field.xi(p) @ d_eta


@attr.s(slots=True, frozen=True, eq=False)
class UmbilicReport:
    """Umbilicity diagnostics of a unit field at one point."""

    lambda_fit: float = attr.ib()
    residual_eq24: float = attr.ib()
    residual_involutive: float = attr.ib()
    theta: np.ndarray = attr.ib()


def _nabla_eta(field: UnitField, p: ChartPoint, spec: MetricSpec, step: float):
    """(nabla eta, d eta, eta, jet) with nabla eta[i, j] = (nabla_i eta)_j."""
    jet = evaluate_metric_jet(spec, p)
    eta = field.eta(p)
    partial, d_eta = _d_eta(field, p, step)
    gamma = christoffel(jet)[0]
    return partial - np.einsum("kij,k->ij", gamma, eta), d_eta, eta, jet


def umbilicity_residual(
    field: UnitField, p: ChartPoint, spec: MetricSpec | None = None, step: float = FIELD_FD_STEP
) -> UmbilicReport:
    """Fit lambda over Delta and measure how far eta is from umbilical at p.

    Raises:
        FieldNotEvaluable: eta unavailable near p
    """
    spec = spec or field.spec
    nabla_eta, d_eta, eta, jet = _nabla_eta(field, p, spec, step)
    g = jet.g
    theta = raise_index(eta, g) @ d_eta

    delta = complement_basis(eta, g)
    lambda_fit = float(np.trace(delta.T @ nabla_eta @ delta)) / (jet.dim - 1)
    model = lambda_fit * (g - np.outer(eta, eta)) + np.outer(eta, theta)
    wedge = np.outer(eta, theta) - np.outer(theta, eta)
    report = UmbilicReport(
        lambda_fit=lambda_fit,
        residual_eq24=tensor_max_norm(nabla_eta - model, g),
        residual_involutive=tensor_norm(d_eta - wedge, g),
        theta=theta,
    )
    _LOGGER.debug(
        "Umbilicity at %s: lambda=%.12g residual %.3e",
        p.coords.tolist(),
        lambda_fit,
        report.residual_eq24,
    )
    return report


def leaf_gauss_check(profile: ProfileCurve, n: int, t: float) -> float:
    """|1/r^2 - a - lambda^2|, the leaf curvature against the ambient one.

    Raises:
        ProfileDomain: t outside the profile
        HypothesisViolated: n < 3 (leaves of a surface are curves)
    """
    if n < 3:
        raise HypothesisViolated(f"leaves are round spheres only for n >= 3, got {n}")
    coeffs = rotational_coefficients(profile, t)
    r = profile.derivatives(t).r
    return abs(1.0 / (r * r) - coeffs.a - coeffs.lam ** 2)


@attr.s(slots=True, frozen=True, eq=False)
class LeafSample:
    """Seeded points of the leaf through t with the leaf's own curvature data."""

    t: float = attr.ib()
    points: tuple = attr.ib()
    sectional: np.ndarray = attr.ib()
    restriction_residual: float = attr.ib()

    @property
    def spread(self) -> float:
        """Spread of the sampled leaf sectional curvatures."""
        return float(np.ptp(self.sectional))


def sample_leaf(
    profile: ProfileCurve, n: int, t: float, count: int = 8, seed: int = DEFAULT_SEED
) -> LeafSample:
    """Sample the leaf S^(n-1)(r(t)) in stereographic coordinates.

    Each sample carries the sectional curvature of a seeded leaf plane, and
    `restriction_residual` compares the leaf metric with the ambient metric
    restricted to the leaf directions.
    """
    if n < 3:
        raise HypothesisViolated(f"leaves are round spheres only for n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    radius = profile.derivatives(t).r
    leaf_spec = sphere_spec(n - 1, radius=radius)
    ambient = rotational_spec(profile, n)

    points, sectional, restriction = [], [], 0.0
    for _ in range(count):
        u = rng.normal(scale=0.5, size=n - 1)
        jet = evaluate_metric_jet(leaf_spec, ChartPoint(u))
        frame = orthonormal_frame(jet.g)
        q, _ = np.linalg.qr(rng.standard_normal((n - 1, 2)))
        x, y = frame @ q[:, 0], frame @ q[:, 1]
        sectional.append(evaluate(riemann(jet), x, y, y, x))

        p = chart_point(n, t, u)
        induced = ambient.chart.metric(p.coords)[:-1, :-1]
        restriction = max(restriction, float(np.max(np.abs(induced - jet.g))))
        points.append(p)
    return LeafSample(
        t=t, points=tuple(points), sectional=np.array(sectional), restriction_residual=restriction
    )


def _require_constant_difference(profile: ProfileCurve, ts, tolerance: float) -> None:
    """Raise HypothesisViolated unless a - b is stationary at every t."""
    for t in ts:
        c = rotational_coefficients(profile, float(t))
        slope = abs(c.xi_a - c.xi_b)
        if slope > tolerance * max(1.0, abs(c.xi_a), abs(c.xi_b)):
            raise HypothesisViolated(f"a - b is not constant: xi(a - b) = {slope:.3e} at t={t}")


@attr.s(slots=True, frozen=True)
class LeafSymmetryReport:
    """Leafwise necessary conditions for locally symmetric leaves at t."""

    t: float = attr.ib()
    leaf_dlambda2: float = attr.ib()
    leaf_curvature: float = attr.ib()
    leaf_spread: float = attr.ib()
    gauss_residual: float = attr.ib()
    passed: bool = attr.ib()


def theorem41_leaf_symmetry(
    profile: ProfileCurve,
    n: int,
    t: float,
    seed: int = DEFAULT_SEED,
    tolerance: float = UMBILIC_TOLERANCE,
) -> LeafSymmetryReport:
    """d lambda^2 vanishes along the leaf and the leaf has constant curvature.

    lambda is refitted from the axial field at points moved along each leaf
    direction, so the check goes through nabla eta rather than the closed form.

    Raises:
        HypothesisViolated: a - b not constant, or n < 3
    """
    _require_constant_difference(profile, [t], HYPOTHESIS_TOLERANCE)
    leaf = sample_leaf(profile, n, t, seed=seed)
    field = axial_field(profile, n)

    dlambda2 = 0.0
    for p in leaf.points:
        for axis in range(n - 1):
            forward = umbilicity_residual(field, p.shifted(axis, LEAF_STEP)).lambda_fit
            backward = umbilicity_residual(field, p.shifted(axis, -LEAF_STEP)).lambda_fit
            dlambda2 = max(dlambda2, abs(forward ** 2 - backward ** 2) / (2.0 * LEAF_STEP))

    gauss = leaf_gauss_check(profile, n, t)
    passed = dlambda2 <= tolerance and leaf.spread <= tolerance and gauss <= tolerance
    _LOGGER.info(
        "Leaf t=%s: d lambda^2 %.3e, curvature spread %.3e, Gauss %.3e",
        t,
        dlambda2,
        leaf.spread,
        gauss,
    )
    return LeafSymmetryReport(
        t=t,
        leaf_dlambda2=dlambda2,
        leaf_curvature=float(np.mean(leaf.sectional)),
        leaf_spread=leaf.spread,
        gauss_residual=gauss,
        passed=passed,
    )


@attr.s(slots=True, frozen=True)
class LeafConstancyReport:
    """Both sides of: xi geodesic and theta = 0 iff k constant on the leaves."""

    ts: tuple = attr.ib()
    geodesic_residual: float = attr.ib()
    theta_norm: float = attr.ib()
    leaf_k: tuple = attr.ib()
    leaf_spread: float = attr.ib()
    proof_identity_residual: float = attr.ib()
    geodesic: bool = attr.ib()
    leafwise_constant: bool = attr.ib()


def _xi_geodesic(field: UnitField, p: ChartPoint, step: float) -> float:
    """|nabla_xi xi| with xi differentiated as a vector field."""
    jet = evaluate_metric_jet(field.spec, p)
    xi = field.xi(p)
    partial = _coordinate_derivative(field.xi, p, step)
    gamma = christoffel(jet)[0]
    accel = xi @ partial + np.einsum("kij,i,j->k", gamma, xi, xi)
    return vector_norm(accel, jet.g)


def _proof_identity(field: UnitField, p: ChartPoint, step: float) -> float:
    """max |theta(x) + eta(nabla_xi x)| over an orthonormal frame of Delta.

    Each frame vector c is extended to the field x = c - eta(c) xi tangent to Delta.
    """
    jet = evaluate_metric_jet(field.spec, p)
    eta, xi = field.eta(p), field.xi(p)
    theta = theta_form(field, p, step)
    gamma = christoffel(jet)[0]
    worst = 0.0
    for c in complement_basis(eta, jet.g).T:

        def extended(q, c=c):
            return c - (field.eta(q) @ c) * field.xi(q)

        partial = _coordinate_derivative(extended, p, step)
        nabla_x = xi @ partial + np.einsum("kij,i,j->k", gamma, xi, c)
        worst = max(worst, abs(theta @ c + eta @ nabla_x))
    return worst


def theorem42_check(
    profile: ProfileCurve,
    n: int,
    ts=None,
    leaf_points: int = 4,
    seed: int = DEFAULT_SEED,
    tolerance: float = UMBILIC_TOLERANCE,
    spread_tolerance: float = LEAF_SPREAD_TOLERANCE,
) -> LeafConstancyReport:
    """Compare geodesic xi with theta = 0 against leafwise constant k.

    Raises:
        HypothesisViolated: a - b not constant at the sampled t
        VerificationFailure: the two sides disagree
    """
    ts = profile.sample(4) if ts is None else np.asarray(ts, dtype=float)
    _require_constant_difference(profile, ts, HYPOTHESIS_TOLERANCE)
    field = axial_field(profile, n)
    spec = field.spec
    rng = np.random.default_rng(seed)

    geodesic_residual, theta_norm, identity, spread = 0.0, 0.0, 0.0, 0.0
    leaf_k = []
    for t in ts:
        ks = []
        for _ in range(leaf_points):
            p = chart_point(n, float(t), rng.normal(scale=0.5, size=n - 1))
            g = evaluate_metric_jet(spec, p).g
            geodesic_residual = max(geodesic_residual, _xi_geodesic(field, p, FIELD_FD_STEP))
            theta_norm = max(theta_norm, covector_norm(theta_form(field, p), g))
            identity = max(identity, _proof_identity(field, p, FIELD_FD_STEP))
            try:
                ks.append(constant_relcurv_test(p, spec)[0])
            except LocallySymmetric:
                ks.append(0.0)
        spread = max(spread, float(np.ptp(ks)) / max(1.0, abs(float(np.mean(ks)))))
        leaf_k.append(float(np.mean(ks)))

    geodesic = geodesic_residual <= tolerance and theta_norm <= tolerance
    leafwise_constant = spread <= spread_tolerance
    if geodesic != leafwise_constant:
        raise VerificationFailure(
            f"geodesic xi ({geodesic}) and leafwise constant k ({leafwise_constant}) disagree"
        )
    _LOGGER.info("Leaf constancy over %s leaves: k = %s", len(leaf_k), leaf_k)
    return LeafConstancyReport(
        ts=tuple(float(t) for t in ts),
        geodesic_residual=geodesic_residual,
        theta_norm=theta_norm,
        leaf_k=tuple(leaf_k),
        leaf_spread=spread,
        proof_identity_residual=identity,
        geodesic=geodesic,
        leafwise_constant=leafwise_constant,
    )


@attr.s(slots=True, frozen=True)
class ConstantFit:
    """Per-sample estimates of the integration constant C."""

    estimates: tuple = attr.ib()
    relative_spread: float = attr.ib()
    dropped: tuple = attr.ib(default=())


def _constant_estimates(profile, n, ts, center: float, offset: float, tolerance: float):
    s = (n - 1) * (n + 2)
    estimates, dropped = [], []
    for t in ts:
        t = float(t)
        tau = tau_rotational(profile, n, t)
        gap = tau - center
        if abs(gap) < tolerance * max(1.0, abs(tau)):
            dropped.append(t)
            continue
        dtau2 = dtau_rotational(profile, n, t) ** 2
        estimates.append((dtau2 + 4.0 * gap * gap * (tau + offset) / s) / gap)
    if dropped:
        _LOGGER.info("Constant fit dropped %s samples with tau near %.6g", len(dropped), center)
    if not estimates:
        raise NearSingularFit(f"tau - {center:.6g} vanishes at every sample")
    values = np.array(estimates)
    median = float(np.median(values))
    spread = float(np.ptp(values)) / abs(median) if median != 0.0 else math.inf
    return ConstantFit(estimates=tuple(estimates), relative_spread=spread, dropped=tuple(dropped))


def remark43_constant_fit(
    profile: ProfileCurve,
    n: int,
    big_b: float,
    sample_ts,
    tolerance: float = NEAR_SINGULAR_TOLERANCE,
) -> ConstantFit:
    """C(t) = (|d tau|^2 + 4 (tau - nB)^2 (tau + 2B) / ((n - 1)(n + 2))) / (tau - nB).

    Samples with tau - nB near zero are dropped and listed in the result.

    Raises:
        NearSingularFit: every sample dropped
    """
    return _constant_estimates(profile, n, sample_ts, n * big_b, 2.0 * big_b, tolerance)


@attr.s(slots=True, frozen=True, eq=False)
class MeasuredRelation:
    """Measured dependence of |d tau|^2 on tau along a profile."""

    coefficients: np.ndarray = attr.ib()
    fit_residual: float = attr.ib()
    leading_expected: float = attr.ib()
    normalized: ConstantFit = attr.ib()
    predicted_constant: float | None = attr.ib()


def remark43_measured_relation(
    profile: ProfileCurve,
    n: int,
    big_b: float,
    sample_ts,
    tolerance: float = NEAR_SINGULAR_TOLERANCE,
) -> MeasuredRelation:
    """Least squares cubic |d tau|^2 = c3 tau^3 + ... + c0 and the normalized constant.

    With s = (n - 1)(n + 2) the meridians of a - b = B obey

        |d tau|^2 = -(4/s)(tau - n(n-1)B)^2 (tau + 2(n-1)B) + C (tau - n(n-1)B),

    with C = 4 s A, that is the constant fit with B replaced by (n - 1) B.
    `normalized` holds those per-sample estimates; the cubic's leading
    coefficient should be -4/s.
    """
    ts = np.asarray(sample_ts, dtype=float)
    taus = np.array([tau_rotational(profile, n, float(t)) for t in ts])
    dtau2 = np.array([dtau_rotational(profile, n, float(t)) ** 2 for t in ts])
    coefficients, residuals, *_ = np.polyfit(taus, dtau2, 3, full=True)
    fit_residual = float(math.sqrt(residuals[0] / len(ts))) if residuals.size else 0.0

    s = (n - 1) * (n + 2)
    shifted = (n - 1) * big_b
    normalized = _constant_estimates(profile, n, ts, n * shifted, 2.0 * shifted, tolerance)
    big_a = profile.params.get("A")
    relation = MeasuredRelation(
        coefficients=coefficients,
        fit_residual=fit_residual,
        leading_expected=-4.0 / s,
        normalized=normalized,
        predicted_constant=4.0 * s * big_a if big_a is not None else None,
    )
    _LOGGER.info(
        "Measured |d tau|^2 cubic %s (leading expected %.6g), normalized spread %.3e",
        np.array2string(coefficients, precision=6),
        relation.leading_expected,
        normalized.relative_spread,
    )
    return relation


def constant_fit_report(
    profile: ProfileCurve,
    n: int,
    big_b: float,
    sample_ts,
    tolerance: float = CONSTANT_FIT_SPREAD_TOLERANCE,
):
    """Constant fit as stated, with the measured relation when the fit deviates.

    Returns:
        tuple: (fit, relation) where relation is None when the stated fit holds
    """
    fit = remark43_constant_fit(profile, n, big_b, sample_ts)
    if fit.relative_spread <= tolerance:
        return fit, None
    relation = remark43_measured_relation(profile, n, big_b, sample_ts)
    _LOGGER.warning(
        "Stated constant fit spreads by %.3e; the relation with B scaled by n - 1 spreads by %.3e",
        fit.relative_spread,
        relation.normalized.relative_spread,
    )
    return fit, relation


@attr.s(slots=True, frozen=True, eq=False)
class SurfaceForm:
    """Sectional 1-form of a surface of revolution against dK."""

    t: float = attr.ib()
    phi: np.ndarray = attr.ib()
    d_k: np.ndarray = attr.ib()
    k_value: float = attr.ib()
    residual: float = attr.ib()


def gaussian_curvature(profile: ProfileCurve, t: float):
    """(K, dK/dt) with K = -r'' / (r (1 + r'^2)^2)."""
    d = profile.derivatives(t)
    r, r1, r2, r3, f = d.r, d.r1, d.r2, d.r3, d.f
    gauss = -r2 / (r * f * f)
    slope = -r3 / (r * f * f) + r2 * (r1 * f + 4.0 * r * r1 * r2) / (r * r * f ** 3)
    return gauss, slope


def surface_sectional_form(
    profile: ProfileCurve, t: float, u: float = 0.0, tolerance: float = SURFACE_TOLERANCE
) -> SurfaceForm:
    """phi of the tangent plane from nabla R, checked against dK.

    Raises:
        ProfileDomain: t outside the profile
        VerificationFailure: phi and dK differ by more than tolerance
    """
    spec = rotational_spec(profile, 2)
    p = chart_point(2, t, [u])
    bundle = curvature_at(spec, p)
    g = bundle.g
    frame = orthonormal_frame(g)
    form = sectional_one_form(bundle.nabla_riem, TwoPlane(x=frame[:, 0], y=frame[:, 1], point=p))
    phi = np.linalg.solve(frame.T, [form.phi_x, form.phi_y])
    _, slope = gaussian_curvature(profile, t)
    d_k = np.array([0.0, slope])
    residual = float(np.max(np.abs(phi - d_k)))
    if residual > tolerance * max(1.0, float(np.max(np.abs(d_k)))):
        raise VerificationFailure(f"phi differs from dK by {residual:.3e} at t={t}")
    return SurfaceForm(t=t, phi=phi, d_k=d_k, k_value=covector_norm(d_k, g), residual=residual)


@attr.s(slots=True, frozen=True)
class SurfaceConstancy:
    """|grad K| along a profile against the relative curvature from nabla R."""

    ts: tuple = attr.ib()
    k_values: tuple = attr.ib()
    k_fits: tuple = attr.ib()
    spread: float = attr.ib()
    constant: bool = attr.ib()
    fit_residual: float = attr.ib()


def surface_constancy(profile: ProfileCurve, ts=None, tolerance: float = SURFACE_TOLERANCE):
    """|grad K| is constant along the profile iff the relative curvature is.

    k from |dK| and k from the fit of nabla R must agree at every t; the
    profile has constant relative sectional curvature when they do not vary.

    Raises:
        VerificationFailure: the two values of k disagree
    """
    ts = profile.sample(10) if ts is None else np.asarray(ts, dtype=float)
    spec = rotational_spec(profile, 2)
    k_values, k_fits = [], []
    worst = 0.0
    for t in ts:
        form = surface_sectional_form(profile, float(t), tolerance=tolerance)
        try:
            k_fit = constant_relcurv_test(chart_point(2, float(t)), spec)[0]
        except LocallySymmetric:
            k_fit = 0.0
        worst = max(worst, abs(k_fit - form.k_value))
        k_values.append(form.k_value)
        k_fits.append(k_fit)
    if worst > tolerance * max(1.0, max(k_values)):
        raise VerificationFailure(f"|dK| and the fitted k differ by {worst:.3e}")
    spread = float(np.ptp(k_values))
    return SurfaceConstancy(
        ts=tuple(float(t) for t in ts),
        k_values=tuple(k_values),
        k_fits=tuple(k_fits),
        spread=spread,
        constant=spread <= tolerance * max(1.0, max(k_values)),
        fit_residual=worst,
    )
