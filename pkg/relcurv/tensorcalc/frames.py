"""Orthonormal frames and metric inner products."""
from __future__ import annotations

import numpy as np

from ..const import UNIT_TOLERANCE
from ..exceptions import NotUnit


def orthonormal_frame(g: np.ndarray) -> np.ndarray:
    """Columns form a g-orthonormal basis (F^T g F = I)."""
    lower = np.linalg.cholesky(g)
    return np.linalg.inv(lower).T


def frame_components(tensor: np.ndarray, frame: np.ndarray) -> np.ndarray:
    """Components of a covariant tensor on the columns of frame."""
    out = np.asarray(tensor, dtype=float)
    for _ in range(out.ndim):
        # contracting axis 0 and appending the new axis cycles back to the original order
        out = np.tensordot(out, frame, axes=([0], [0]))
    return out


def tensor_inner(first: np.ndarray, second: np.ndarray, g: np.ndarray) -> float:
    """Full g-contraction of two covariant tensors of equal rank."""
    frame = orthonormal_frame(g)
    return float(np.sum(frame_components(first, frame) * frame_components(second, frame)))


def tensor_norm(tensor: np.ndarray, g: np.ndarray) -> float:
    """Norm of a covariant tensor induced by g."""
    frame = orthonormal_frame(g)
    return float(np.sqrt(np.sum(frame_components(tensor, frame) ** 2)))


def tensor_max_norm(tensor: np.ndarray, g: np.ndarray) -> float:
    """Largest orthonormal frame component in absolute value."""
    if tensor.size == 0:
        return 0.0
    return float(np.max(np.abs(frame_components(tensor, orthonormal_frame(g)))))


def covector_norm(form: np.ndarray, g: np.ndarray) -> float:
    """Norm of a 1-form."""
    form = np.asarray(form, dtype=float)
    return float(np.sqrt(max(form @ np.linalg.solve(g, form), 0.0)))


def vector_norm(vector: np.ndarray, g: np.ndarray) -> float:
    """Norm of a tangent vector."""
    vector = np.asarray(vector, dtype=float)
    return float(np.sqrt(max(vector @ g @ vector, 0.0)))


def raise_index(form: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Vector g-dual to a 1-form."""
    return np.linalg.solve(g, np.asarray(form, dtype=float))


def lower_index(vector: np.ndarray, g: np.ndarray) -> np.ndarray:
    """1-form g-dual to a vector."""
    return g @ np.asarray(vector, dtype=float)


def check_unit(form: np.ndarray, g: np.ndarray, tolerance: float = UNIT_TOLERANCE) -> None:
    """Raise NotUnit unless the 1-form has norm one."""
    norm = covector_norm(form, g)
    if abs(norm - 1.0) > tolerance:
        raise NotUnit(f"1-form has norm {norm:.12g}")


def complement_basis(form: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel of a unit 1-form."""
    xi = raise_index(form, g)
    n = g.shape[0]
    basis = [xi]
    for candidate in np.eye(n):
        vec = candidate.copy()
        for prev in basis:
            vec = vec - (prev @ g @ vec) / (prev @ g @ prev) * prev
        length = vector_norm(vec, g)
        if length > 1e-8:
            basis.append(vec / length)
        if len(basis) == n:
            break
    return np.column_stack(basis[1:])
