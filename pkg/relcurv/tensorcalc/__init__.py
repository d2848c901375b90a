"""Metric jets and the curvature pipeline."""
from .curvature import (
    CurvatureBundle,
    christoffel,
    curvature_bundle,
    dtau_from_bianchi,
    nabla_riemann,
    ricci_and_scalar,
    riemann,
)
from .frames import (
    covector_norm,
    frame_components,
    orthonormal_frame,
    tensor_inner,
    tensor_max_norm,
    tensor_norm,
    vector_norm,
)
from .jet import ChartPoint, MetricJet
from .model import build_phi, build_pi, build_Pi, eta_tensor_phi, evaluate
from .symmetry import (
    RiemannResiduals,
    SymmetryResiduals,
    lemma23_rank_check,
    polarization_residual,
    riemann_residuals,
    symmetric_space_basis,
    symmetry_residuals,
)

__all__ = [
    "ChartPoint",
    "CurvatureBundle",
    "MetricJet",
    "RiemannResiduals",
    "SymmetryResiduals",
    "build_phi",
    "build_pi",
    "build_Pi",
    "christoffel",
    "covector_norm",
    "curvature_bundle",
    "dtau_from_bianchi",
    "eta_tensor_phi",
    "evaluate",
    "frame_components",
    "lemma23_rank_check",
    "nabla_riemann",
    "orthonormal_frame",
    "polarization_residual",
    "ricci_and_scalar",
    "riemann",
    "riemann_residuals",
    "symmetric_space_basis",
    "symmetry_residuals",
    "tensor_inner",
    "tensor_max_norm",
    "tensor_norm",
    "vector_norm",
]
