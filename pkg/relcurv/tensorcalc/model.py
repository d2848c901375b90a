"""Model curvature-type tensors built from the metric and a 1-form."""
from __future__ import annotations

import numpy as np

from ..const import UNIT_TOLERANCE
from .frames import check_unit
from .jet import MetricJet


def build_pi(jet: MetricJet) -> np.ndarray:
    """pi(X, Y, Z, U) = g(Y, Z) g(X, U) - g(X, Z) g(Y, U)."""
    g = jet.g
    return np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)


def build_phi(jet: MetricJet, eta: np.ndarray, tolerance: float = UNIT_TOLERANCE) -> np.ndarray:
    """Four term tensor Phi of a unit 1-form eta.

    Phi(X, Y, Z, U) = g(Y, Z) eta(X) eta(U) - g(X, Z) eta(Y) eta(U)
                    + g(X, U) eta(Y) eta(Z) - g(Y, U) eta(X) eta(Z)

    Raises:
        NotUnit: eta is not a unit 1-form
    """
    eta = np.asarray(eta, dtype=float)
    check_unit(eta, jet.g, tolerance)
    g = jet.g
    return (
        np.einsum("jk,i,l->ijkl", g, eta, eta)
        - np.einsum("ik,j,l->ijkl", g, eta, eta)
        + np.einsum("il,j,k->ijkl", g, eta, eta)
        - np.einsum("jl,i,k->ijkl", g, eta, eta)
    )


def build_Pi(omega: np.ndarray, jet: MetricJet) -> np.ndarray:
    """Rank 5 tensor Pi(omega) sharing the symmetries of nabla R.

    Pi(W, X, Y, Z, U) = 2 w(W) pi(X, Y, Z, U) + w(X) pi(W, Y, Z, U)
                      + w(Y) pi(X, W, Z, U) + w(Z) pi(X, Y, W, U) + w(U) pi(X, Y, Z, W)
    """
    omega = np.asarray(omega, dtype=float)
    pi = build_pi(jet)
    return (
        2.0 * np.einsum("w,xyzu->wxyzu", omega, pi)
        + np.einsum("x,wyzu->wxyzu", omega, pi)
        + np.einsum("y,xwzu->wxyzu", omega, pi)
        + np.einsum("z,xywu->wxyzu", omega, pi)
        + np.einsum("u,xyzw->wxyzu", omega, pi)
    )


def eta_tensor_phi(jet: MetricJet, eta: np.ndarray) -> np.ndarray:
    """eta (x) Phi, the second pattern of nabla R on rotational hypersurfaces."""
    return np.einsum("w,xyzu->wxyzu", np.asarray(eta, dtype=float), build_phi(jet, eta))


def evaluate(tensor: np.ndarray, *vectors: np.ndarray) -> float:
    """Value of a covariant tensor on the given vectors."""
    out = np.asarray(tensor, dtype=float)
    for vec in vectors:
        out = np.tensordot(out, np.asarray(vec, dtype=float), axes=([0], [0]))
    return float(out)
