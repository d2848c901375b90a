"""Sectional 1-forms, directedness and pointwise constant relative curvature.

A plane E = span{X, Y} carries the sectional 1-form

    phi_E(Z) = (nabla_Z R)(X, Y, Y, X).

The manifold is directed by a unit 1-form eta when phi_E is a multiple
k(E, p) eta|_E on every plane not inside Delta = ker eta and vanishes on the
planes inside Delta. The factor is pointwise constant exactly when

    nabla R = (k / 4) Pi(eta),

and then d tau = (n - 1)(n + 2) k eta / 2, so eta = d tau / |d tau| gives k >= 0.
"""
from __future__ import annotations

import logging
import math

import attr
import numpy as np

from .charts import MetricSpec
from .const import (
    ANALYTIC,
    ANALYTIC_TOLERANCE,
    DEFAULT_PLANES_PER_POINT,
    DEFAULT_SEED,
    ETA_CONTINUITY_TOLERANCE,
    FINITE_DIFFERENCE_TOLERANCE,
    IDENTITY_TOLERANCE,
    LOCALLY_SYMMETRIC_TOLERANCE,
    MIN_PLANES_PER_POINT,
    RESIDUAL_FLOOR,
    SCALAR_GRADIENT_TOLERANCE,
)
from .exceptions import (
    ConfigSemantic,
    DegenerateScalarGradient,
    LocallySymmetric,
    PlaneInsideDistribution,
    VerificationFailure,
)
from .pipeline import curvature_at
from .tensorcalc.curvature import CurvatureBundle
from .tensorcalc.frames import (
    complement_basis,
    covector_norm,
    orthonormal_frame,
    raise_index,
    tensor_inner,
    tensor_norm,
)
from .tensorcalc.jet import ChartPoint, MetricJet, _as_vector
from .tensorcalc.model import build_Pi, evaluate

_LOGGER = logging.getLogger(__name__)

# |eta|_E| at or below this puts E inside Delta
PLANE_TOLERANCE = 1e-8


@attr.s(slots=True, frozen=True)
class Tolerances:
    """Thresholds of the classifiers.

    `relative` bounds residuals divided by |nabla R|; `locally_symmetric`
    and `scalar_gradient` bound |nabla R| and |d tau| divided by max(1, |R|).
    """

    relative: float = attr.ib(default=ANALYTIC_TOLERANCE)
    locally_symmetric: float = attr.ib(default=LOCALLY_SYMMETRIC_TOLERANCE)
    scalar_gradient: float = attr.ib(default=SCALAR_GRADIENT_TOLERANCE)
    floor: float = attr.ib(default=RESIDUAL_FLOOR)
    identity: float = attr.ib(default=IDENTITY_TOLERANCE)

    @relative.validator
    @locally_symmetric.validator
    @scalar_gradient.validator
    @floor.validator
    @identity.validator
    def _check_positive(self, attribute, value) -> None:
        if not value > 0:
            raise ConfigSemantic(f"tolerance {attribute.name} must be positive, got {value}")

    @classmethod
    def for_mode(cls, jet_mode: str) -> Tolerances:
        """Defaults for analytic or finite difference jets."""
        if jet_mode == ANALYTIC:
            return cls()
        return cls(
            relative=FINITE_DIFFERENCE_TOLERANCE,
            locally_symmetric=FINITE_DIFFERENCE_TOLERANCE,
            scalar_gradient=FINITE_DIFFERENCE_TOLERANCE,
            identity=FINITE_DIFFERENCE_TOLERANCE,
        )


@attr.s(slots=True, frozen=True, eq=False)
class TwoPlane:
    """Plane E spanned by g-orthonormal x, y at a point."""

    x: np.ndarray = attr.ib(converter=_as_vector)
    y: np.ndarray = attr.ib(converter=_as_vector)
    point: ChartPoint | None = attr.ib(default=None)
    cos2gamma: float | None = attr.ib(default=None)

    @classmethod
    def spanned(cls, x, y, g: np.ndarray, point: ChartPoint | None = None, eta=None) -> TwoPlane:
        """Gram-Schmidt x, y with respect to g and attach cos^2 of the angle to eta."""
        x = np.asarray(x, dtype=float)
        x = x / math.sqrt(x @ g @ x)
        y = np.asarray(y, dtype=float)
        y = y - (x @ g @ y) * x
        y = y / math.sqrt(y @ g @ y)
        cos2gamma = None
        if eta is not None:
            eta = np.asarray(eta, dtype=float)
            cos2gamma = min(1.0, float((eta @ x) ** 2 + (eta @ y) ** 2))
        return cls(x=x, y=y, point=point, cos2gamma=cos2gamma)

    def orthonormality_residual(self, g: np.ndarray) -> float:
        """Largest deviation of the Gram matrix of (x, y) from the identity."""
        basis = np.column_stack([self.x, self.y])
        return float(np.max(np.abs(basis.T @ g @ basis - np.eye(2))))

    def rotated(self, angle: float) -> TwoPlane:
        """Same plane with its basis rotated by angle."""
        c, s = math.cos(angle), math.sin(angle)
        return TwoPlane(
            x=c * self.x + s * self.y,
            y=-s * self.x + c * self.y,
            point=self.point,
            cos2gamma=self.cos2gamma,
        )

    def restricted(self, form: np.ndarray) -> np.ndarray:
        """Components (form(x), form(y)) of a 1-form on E."""
        form = np.asarray(form, dtype=float)
        return np.array([form @ self.x, form @ self.y])


@attr.s(slots=True, frozen=True)
class SectionalForm:
    """phi_E on the basis of its plane."""

    phi_x: float = attr.ib(converter=float)
    phi_y: float = attr.ib(converter=float)

    @property
    def norm(self) -> float:
        """Norm of phi_E on E."""
        return math.hypot(self.phi_x, self.phi_y)

    def rotated(self, angle: float) -> SectionalForm:
        """Components on the basis rotated as in `TwoPlane.rotated`."""
        c, s = math.cos(angle), math.sin(angle)
        return SectionalForm(
            phi_x=c * self.phi_x + s * self.phi_y, phi_y=-s * self.phi_x + c * self.phi_y
        )


@attr.s(slots=True, frozen=True, eq=False)
class DirectedReport:
    """Classification of one point."""

    point: ChartPoint = attr.ib()
    tau: float = attr.ib()
    dtau_norm: float = attr.ib()
    eta: np.ndarray | None = attr.ib()
    k_fit: float | None = attr.ib()
    k_spread: float = attr.ib()
    residual_collinearity: float = attr.ib()
    residual_delta_planes: float = attr.ib()
    residual_theorem24: float = attr.ib()
    locally_symmetric: bool = attr.ib()
    directed: bool = attr.ib()
    pointwise_constant: bool = attr.ib()
    degenerate_gradient: bool = attr.ib(default=False)
    plane_count: int = attr.ib(default=0)


def _curvature_scale(bundle: CurvatureBundle) -> float:
    return max(1.0, tensor_norm(bundle.riem, bundle.g))


def sectional_one_form(nabla_riem: np.ndarray, plane: TwoPlane) -> SectionalForm:
    """phi_x = (nabla_x R)(x, y, y, x) and phi_y = (nabla_y R)(x, y, y, x)."""
    x, y = plane.x, plane.y
    return SectionalForm(
        phi_x=evaluate(nabla_riem, x, x, y, y, x),
        phi_y=evaluate(nabla_riem, y, x, y, y, x),
    )


def eta_from_dtau(dtau: np.ndarray, jet: MetricJet, tolerance: float = SCALAR_GRADIENT_TOLERANCE):
    """Unit 1-form d tau / |d tau|.

    Raises:
        DegenerateScalarGradient: |d tau| <= tolerance
    """
    norm = covector_norm(dtau, jet.g)
    if norm <= tolerance:
        raise DegenerateScalarGradient(f"|d tau| = {norm:.3e} at or below {tolerance:.1e}")
    return np.asarray(dtau, dtype=float) / norm


def relative_curvature(
    plane: TwoPlane, eta: np.ndarray, nabla_riem: np.ndarray, tolerance: float = PLANE_TOLERANCE
) -> float:
    """Least squares factor k(E, p) in phi_E = k eta|_E.

    Raises:
        PlaneInsideDistribution: |eta|_E| <= tolerance
    """
    ex, ey = plane.restricted(eta)
    weight = ex * ex + ey * ey
    if math.sqrt(weight) <= tolerance:
        raise PlaneInsideDistribution(f"|eta restricted to E| = {math.sqrt(weight):.3e}")
    phi = sectional_one_form(nabla_riem, plane)
    return (phi.phi_x * ex + phi.phi_y * ey) / weight


def _gaussian_pair(rng: np.random.Generator, basis: np.ndarray):
    """Two orthonormal vectors in the span of the orthonormal columns of basis."""
    q, _ = np.linalg.qr(rng.standard_normal((basis.shape[1], 2)))
    return basis @ q[:, 0], basis @ q[:, 1]


def sample_planes(
    jet: MetricJet,
    eta: np.ndarray | None,
    count: int = DEFAULT_PLANES_PER_POINT,
    seed: int = DEFAULT_SEED,
    point: ChartPoint | None = None,
) -> list:
    """Seeded planes in three strata.

    A quarter contain xi (the dual of eta), a quarter lie inside Delta (none
    when n = 2) and the rest are uniform on the Grassmannian. Without eta all
    planes are generic.

    Raises:
        ConfigSemantic: count below MIN_PLANES_PER_POINT
    """
    if count < MIN_PLANES_PER_POINT:
        raise ConfigSemantic(f"need at least {MIN_PLANES_PER_POINT} planes, got {count}")
    rng = np.random.default_rng(seed)
    g = jet.g
    frame = orthonormal_frame(g)
    n = jet.dim

    with_xi = count // 4 if eta is not None else 0
    inside = count // 4 if eta is not None and n >= 3 else 0
    generic = count - with_xi - inside

    planes = []
    if eta is not None:
        xi = raise_index(eta, g)
        delta = complement_basis(eta, g)
        for _ in range(with_xi):
            direction = delta @ rng.standard_normal(n - 1)
            planes.append(TwoPlane.spanned(xi, direction, g, point, eta))
        for _ in range(inside):
            planes.append(TwoPlane.spanned(*_gaussian_pair(rng, delta), g, point, eta))
    for _ in range(generic):
        planes.append(TwoPlane.spanned(*_gaussian_pair(rng, frame), g, point, eta))
    return planes


def _projection_fit(bundle: CurvatureBundle, eta: np.ndarray, floor: float):
    """(k_fit, relative residual) of nabla R against (k / 4) Pi(eta)."""
    g = bundle.g
    model = build_Pi(eta, bundle.jet)
    k_fit = 4.0 * tensor_inner(bundle.nabla_riem, model, g) / tensor_inner(model, model, g)
    remainder = bundle.nabla_riem - 0.25 * k_fit * model
    scale = max(tensor_norm(bundle.nabla_riem, g), floor)
    return k_fit, tensor_norm(remainder, g) / scale


def scalar_gradient_k(dtau_norm: float, n: int) -> float:
    """k = 2 |d tau| / ((n - 1)(n + 2))."""
    return 2.0 * dtau_norm / ((n - 1) * (n + 2))


def _check_locally_symmetric(bundle: CurvatureBundle, tolerances: Tolerances) -> None:
    scale = _curvature_scale(bundle)
    nabla_norm = tensor_norm(bundle.nabla_riem, bundle.g)
    if nabla_norm <= tolerances.locally_symmetric * scale:
        raise LocallySymmetric(f"|nabla R| = {nabla_norm:.3e}, the test is vacuous")


def constant_relcurv_test(
    point: ChartPoint, spec: MetricSpec, tolerances: Tolerances | None = None
):
    """Fit nabla R = (k / 4) Pi(eta) with eta = d tau / |d tau|.

    Returns:
        tuple: (k_fit, residual) with residual relative to |nabla R|

    Raises:
        LocallySymmetric: nabla R vanishes at the point
        DegenerateScalarGradient: d tau vanishes while nabla R does not
        VerificationFailure: the fit passes but k_fit disagrees with
            2 |d tau| / ((n - 1)(n + 2))
    """
    tolerances = tolerances or Tolerances.for_mode(spec.jet_mode)
    bundle = curvature_at(spec, point, tolerances.identity)
    _check_locally_symmetric(bundle, tolerances)
    threshold = tolerances.scalar_gradient * _curvature_scale(bundle)
    eta = eta_from_dtau(bundle.dtau, bundle.jet, threshold)
    k_fit, residual = _projection_fit(bundle, eta, tolerances.floor)
    if residual <= tolerances.relative:
        expected = scalar_gradient_k(covector_norm(bundle.dtau, bundle.g), bundle.dim)
        if abs(k_fit - expected) > tolerances.relative * max(1.0, abs(expected)):
            raise VerificationFailure(
                f"k_fit {k_fit:.12g} disagrees with 2|d tau|/((n-1)(n+2)) = {expected:.12g}"
            )
    _LOGGER.debug("Constant relative curvature fit at %s: k=%.12g residual=%.3e",
                  point.coords.tolist(), k_fit, residual)
    return k_fit, residual


def locally_symmetric_test(
    point: ChartPoint, spec: MetricSpec, tolerances: Tolerances | None = None
) -> bool:
    """|nabla R| vanishes, checked against the vanishing of d tau.

    Raises:
        VerificationFailure: one of nabla R, d tau vanishes and the other does not
    """
    tolerances = tolerances or Tolerances.for_mode(spec.jet_mode)
    bundle = curvature_at(spec, point, tolerances.identity)
    scale = _curvature_scale(bundle)
    flat_nabla = tensor_norm(bundle.nabla_riem, bundle.g) <= tolerances.locally_symmetric * scale
    flat_tau = covector_norm(bundle.dtau, bundle.g) <= tolerances.scalar_gradient * scale
    if flat_nabla != flat_tau:
        raise VerificationFailure(
            f"nabla R vanishing ({flat_nabla}) and d tau vanishing ({flat_tau}) disagree "
            f"at {point.coords.tolist()}"
        )
    return flat_nabla


def _plane_residuals(bundle: CurvatureBundle, eta: np.ndarray, planes: list):
    """(collinearity, delta-plane, k spread) over the sampled planes."""
    collinearity, delta_planes = 0.0, 0.0
    ks = []
    for plane in planes:
        phi = sectional_one_form(bundle.nabla_riem, plane)
        ex, ey = plane.restricted(eta)
        if math.hypot(ex, ey) <= PLANE_TOLERANCE:
            delta_planes = max(delta_planes, phi.norm)
            continue
        collinearity = max(collinearity, abs(phi.phi_x * ey - phi.phi_y * ex))
        ks.append(relative_curvature(plane, eta, bundle.nabla_riem))
    spread = float(np.ptp(ks)) if ks else 0.0
    return collinearity, delta_planes, spread


def directedness_report(
    point: ChartPoint,
    spec: MetricSpec,
    sample_count: int = DEFAULT_PLANES_PER_POINT,
    seed: int = DEFAULT_SEED,
    tolerances: Tolerances | None = None,
) -> DirectedReport:
    """Classify the point: locally symmetric, directed, pointwise constant.

    Where d tau vanishes no eta is available and the point is reported through
    the locally symmetric test alone.
    """
    tolerances = tolerances or Tolerances.for_mode(spec.jet_mode)
    bundle = curvature_at(spec, point, tolerances.identity)
    g = bundle.g
    scale = _curvature_scale(bundle)
    nabla_norm = tensor_norm(bundle.nabla_riem, g)
    dtau_norm = covector_norm(bundle.dtau, g)
    locally_symmetric = nabla_norm <= tolerances.locally_symmetric * scale

    try:
        eta = eta_from_dtau(bundle.dtau, bundle.jet, tolerances.scalar_gradient * scale)
    except DegenerateScalarGradient:
        _LOGGER.info("d tau vanishes at %s, falling back to the locally symmetric test",
                     point.coords.tolist())
        return DirectedReport(
            point=point,
            tau=bundle.tau,
            dtau_norm=dtau_norm,
            eta=None,
            k_fit=0.0 if locally_symmetric else None,
            k_spread=0.0,
            residual_collinearity=0.0,
            residual_delta_planes=0.0,
            residual_theorem24=0.0,
            locally_symmetric=locally_symmetric,
            directed=locally_symmetric,
            pointwise_constant=locally_symmetric,
            degenerate_gradient=True,
        )

    planes = sample_planes(bundle.jet, eta, sample_count, seed, point)
    collinearity, delta_planes, spread = _plane_residuals(bundle, eta, planes)
    if locally_symmetric:
        k_fit, projection_residual = 0.0, 0.0
    else:
        k_fit, projection_residual = _projection_fit(bundle, eta, tolerances.floor)

    relative = max(nabla_norm, tolerances.floor)
    directed = locally_symmetric or (
        collinearity / relative <= tolerances.relative
        and delta_planes / relative <= tolerances.relative
    )
    pointwise_constant = locally_symmetric or (
        directed and projection_residual <= tolerances.relative
    )
    _LOGGER.debug(
        "Point %s: collinearity %.3e, delta planes %.3e, projection residual %.3e",
        point.coords.tolist(),
        collinearity,
        delta_planes,
        projection_residual,
    )
    return DirectedReport(
        point=point,
        tau=bundle.tau,
        dtau_norm=dtau_norm,
        eta=eta,
        k_fit=k_fit,
        k_spread=spread,
        residual_collinearity=collinearity,
        residual_delta_planes=delta_planes,
        residual_theorem24=projection_residual,
        locally_symmetric=locally_symmetric,
        directed=directed,
        pointwise_constant=pointwise_constant,
        plane_count=len(planes),
    )


def eta_continuity(
    etas,
    tolerance: float = ETA_CONTINUITY_TOLERANCE,
    indices=None,
    row_length: int | None = None,
):
    """Largest component drift of eta between neighbouring grid points.

    Neighbours are consecutive grid indices along the fastest axis; the
    last point of a row and the first of the next are not compared. Points
    without eta (vanishing d tau) break the chain and are skipped.

    Args:
        etas: eta per point, None where d tau vanishes
        tolerance: allowed drift
        indices: grid index of each entry, 0, 1, 2, ... when omitted
        row_length: number of samples along the fastest axis

    Returns:
        tuple: (max_drift, drift <= tolerance)
    """
    etas = list(etas)
    if indices is None:
        indices = range(len(etas))
    drift = 0.0
    previous = None
    previous_index = None
    for index, eta in zip(indices, etas):
        if eta is None:
            previous = None
            continue
        eta = np.asarray(eta, dtype=float)
        neighbour = (
            previous is not None
            and index == previous_index + 1
            and (row_length is None or index % row_length != 0)
        )
        if neighbour:
            drift = max(drift, float(np.max(np.abs(eta - previous))))
        previous, previous_index = eta, index
    return drift, drift <= tolerance
