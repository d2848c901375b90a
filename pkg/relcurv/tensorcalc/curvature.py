"""Curvature pipeline: Christoffel symbols, R, nabla R, Ricci, scalar curvature.

Index conventions used throughout the package:

    gamma[i, j, k]          Christoffel symbol Gamma^i_jk
    dgamma[i, j, k, m]      d_m Gamma^i_jk
    riem[a, b, c, d]        R(e_a, e_b, e_c, e_d) = g(R(e_a, e_b) e_c, e_d)
    nabla_riem[m, a, b, c, d]   (nabla_m R)(e_a, e_b, e_c, e_d)

with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y], so that the unit sphere
has R(X, Y, Y, X) = +1 on orthonormal X, Y.
"""
from __future__ import annotations

import logging

import attr
import numpy as np

from ..const import IDENTITY_TOLERANCE
from ..exceptions import DegenerateMetric, SymmetryViolation
from .jet import MetricJet, _frozen
from .symmetry import symmetry_residuals

_LOGGER = logging.getLogger(__name__)


def _inverse(jet: MetricJet) -> np.ndarray:
    try:
        return np.linalg.inv(jet.g)
    except np.linalg.LinAlgError as err:
        raise DegenerateMetric("metric is not invertible") from err


def _first_kind(dg: np.ndarray) -> np.ndarray:
    """Christoffel symbols of the first kind [l, j, k] and their derivatives.

    Works for dg, d2g, d3g alike since trailing derivative axes ride along.
    """
    tail = "mp"[: dg.ndim - 3]
    lkj = np.einsum(f"lkj{tail}->ljk{tail}", dg)
    jkl = np.einsum(f"jkl{tail}->ljk{tail}", dg)
    return 0.5 * (lkj + dg - jkl)


def christoffel(jet: MetricJet):
    """Christoffel symbols with their first and second partial derivatives.

    Args:
        jet (MetricJet): metric jet, order 1 at least

    Returns:
        tuple: (gamma, dgamma, d2gamma), missing orders are None
    """
    ginv = _inverse(jet)
    first = _first_kind(jet.dg)
    gamma = np.einsum("il,ljk->ijk", ginv, first)

    if jet.d2g is None:
        return gamma, None, None

    dginv = -np.einsum("ia,abm,bl->ilm", ginv, jet.dg, ginv)
    dfirst = _first_kind(jet.d2g)
    dgamma = np.einsum("ilm,ljk->ijkm", dginv, first) + np.einsum("il,ljkm->ijkm", ginv, dfirst)

    if jet.d3g is None:
        return gamma, dgamma, None

    d2ginv = -(
        np.einsum("iap,abm,bl->ilmp", dginv, jet.dg, ginv)
        + np.einsum("ia,abmp,bl->ilmp", ginv, jet.d2g, ginv)
        + np.einsum("ia,abm,blp->ilmp", ginv, jet.dg, dginv)
    )
    d2first = _first_kind(jet.d3g)
    d2gamma = (
        np.einsum("ilmp,ljk->ijkmp", d2ginv, first)
        + np.einsum("ilm,ljkp->ijkmp", dginv, dfirst)
        + np.einsum("ilp,ljkm->ijkmp", dginv, dfirst)
        + np.einsum("il,ljkmp->ijkmp", ginv, d2first)
    )
    return gamma, dgamma, d2gamma


def _riemann_up(gamma: np.ndarray, dgamma: np.ndarray) -> np.ndarray:
    """R^i_jkl with R(e_k, e_l) e_j = R^i_jkl e_i."""
    return (
        np.einsum("iljk->ijkl", dgamma)
        - np.einsum("ikjl->ijkl", dgamma)
        + np.einsum("ikp,plj->ijkl", gamma, gamma)
        - np.einsum("ilp,pkj->ijkl", gamma, gamma)
    )


def _riemann_up_derivative(gamma, dgamma, d2gamma) -> np.ndarray:
    """d_m R^i_jkl stored as [i, j, k, l, m]."""
    return (
        np.einsum("iljkm->ijklm", d2gamma)
        - np.einsum("ikjlm->ijklm", d2gamma)
        + np.einsum("ikpm,plj->ijklm", dgamma, gamma)
        + np.einsum("ikp,pljm->ijklm", gamma, dgamma)
        - np.einsum("ilpm,pkj->ijklm", dgamma, gamma)
        - np.einsum("ilp,pkjm->ijklm", gamma, dgamma)
    )


def riemann(jet: MetricJet) -> np.ndarray:
    """Curvature tensor of type (0, 4)."""
    jet.require(2)
    gamma, dgamma, _ = christoffel(jet)
    return np.einsum("di,icab->abcd", jet.g, _riemann_up(gamma, dgamma))


def nabla_riemann(jet: MetricJet) -> np.ndarray:
    """Covariant derivative of R, differentiation direction in the first slot."""
    jet.require(3)
    gamma, dgamma, d2gamma = christoffel(jet)
    return _nabla_riemann(jet, gamma, dgamma, d2gamma)


def _nabla_riemann(jet: MetricJet, gamma, dgamma, d2gamma) -> np.ndarray:
    rup = _riemann_up(gamma, dgamma)
    riem = np.einsum("di,icab->abcd", jet.g, rup)
    partial = np.einsum("dim,icab->mabcd", jet.dg, rup) + np.einsum(
        "di,icabm->mabcd", jet.g, _riemann_up_derivative(gamma, dgamma, d2gamma)
    )
    return (
        partial
        - np.einsum("pma,pbcd->mabcd", gamma, riem)
        - np.einsum("pmb,apcd->mabcd", gamma, riem)
        - np.einsum("pmc,abpd->mabcd", gamma, riem)
        - np.einsum("pmd,abcp->mabcd", gamma, riem)
    )


def ricci_and_scalar(riem: np.ndarray, jet: MetricJet):
    """Ricci tensor Ric_jk = g^il R_ijkl and scalar curvature tau."""
    ginv = _inverse(jet)
    ricci = np.einsum("il,ijkl->jk", ginv, riem)
    ricci = 0.5 * (ricci + ricci.T)
    tau = float(np.einsum("jk,jk->", ginv, ricci))
    return ricci, tau


def dtau_from_bianchi(
    nabla_riem: np.ndarray, jet: MetricJet, tolerance: float = IDENTITY_TOLERANCE
) -> np.ndarray:
    """Differential of tau from the contracted second Bianchi identity.

    d_k tau = 2 g^mj g^ad (nabla_m R)_ajkd, i.e. twice the divergence of Ricci.

    Raises:
        SymmetryViolation: input fails the identities the contraction relies on
    """
    residuals = symmetry_residuals(nabla_riem)
    scale = max(1.0, float(np.max(np.abs(nabla_riem))) if nabla_riem.size else 1.0)
    if residuals.worst > tolerance * scale:
        raise SymmetryViolation(
            f"nabla R fails its identities (worst residual {residuals.worst:.3e})"
        )

    ginv = _inverse(jet)
    return 2.0 * np.einsum("mj,ad,majkd->k", ginv, ginv, nabla_riem)


@attr.s(slots=True, frozen=True, eq=False)
class CurvatureBundle:
    """Everything the classifiers need at one point."""

    jet: MetricJet = attr.ib()
    gamma: np.ndarray = attr.ib(converter=_frozen)
    dgamma: np.ndarray = attr.ib(converter=_frozen)
    d2gamma: np.ndarray = attr.ib(converter=_frozen)
    riem: np.ndarray = attr.ib(converter=_frozen)
    nabla_riem: np.ndarray = attr.ib(converter=_frozen)
    ricci: np.ndarray = attr.ib(converter=_frozen)
    tau: float = attr.ib(converter=float)
    dtau: np.ndarray = attr.ib(converter=_frozen)

    @property
    def dim(self) -> int:
        """Dimension n."""
        return self.jet.dim

    @property
    def g(self) -> np.ndarray:
        """Metric at the point."""
        return self.jet.g


def curvature_bundle(jet: MetricJet, tolerance: float = IDENTITY_TOLERANCE) -> CurvatureBundle:
    """Run the whole pipeline on a third order jet."""
    jet.require(3)
    gamma, dgamma, d2gamma = christoffel(jet)
    riem = np.einsum("di,icab->abcd", jet.g, _riemann_up(gamma, dgamma))
    nabla_riem = _nabla_riemann(jet, gamma, dgamma, d2gamma)
    ricci, tau = ricci_and_scalar(riem, jet)
    dtau = dtau_from_bianchi(nabla_riem, jet, tolerance)
    _LOGGER.debug("Curvature bundle: tau=%.12g |dtau|_max=%.3e", tau, float(np.max(np.abs(dtau))))
    return CurvatureBundle(
        jet=jet,
        gamma=gamma,
        dgamma=dgamma,
        d2gamma=d2gamma,
        riem=riem,
        nabla_riem=nabla_riem,
        ricci=ricci,
        tau=tau,
        dtau=dtau,
    )
