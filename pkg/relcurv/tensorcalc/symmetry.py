"""Identity checks for curvature-type tensors and the rank computation behind
the vanishing criterion L(X, X, Z, Z, X) = 0 => L = 0."""
from __future__ import annotations

import itertools
import logging

import attr
import numpy as np
from scipy import linalg

from ..const import (
    MACHINE_EPS,
    MIN_DIM,
    POLARIZING_RANDOM_PAIRS,
    RANK_CHECK_MAX_DIM,
    RANK_MIN_GAP,
    RANK_RELATIVE_THRESHOLD,
)
from ..exceptions import ConfigSemantic, DegenerateMetric, RankTolerance

_LOGGER = logging.getLogger(__name__)

# Slot permutations of T(W, X, Y, Z, U) entering each identity family
_ANTISYM_FIRST = ("wyxzu->wxyzu",)
_ANTISYM_SECOND = ("wxyuz->wxyzu",)
_BIANCHI_FIRST = ("wyzxu->wxyzu", "wzxyu->wxyzu")
_BIANCHI_SECOND = ("xywzu->wxyzu", "ywxzu->wxyzu")

_FAMILIES = (_ANTISYM_FIRST, _ANTISYM_SECOND, _BIANCHI_FIRST, _BIANCHI_SECOND)


def _max_abs(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def _family_sum(tensor: np.ndarray, perms: tuple) -> np.ndarray:
    out = np.array(tensor, dtype=float)
    for perm in perms:
        out = out + np.einsum(perm, tensor)
    return out


@attr.s(slots=True, frozen=True)
class SymmetryResiduals:
    """Max-norm residual of each identity family of nabla R."""

    antisym_first: float = attr.ib()
    antisym_second: float = attr.ib()
    bianchi_first: float = attr.ib()
    bianchi_second: float = attr.ib()

    @property
    def worst(self) -> float:
        """Largest of the four residuals."""
        return max(attr.astuple(self))


def symmetry_residuals(tensor: np.ndarray) -> SymmetryResiduals:
    """Residuals of T(W,X,Y,Z,U) = -T(W,Y,X,Z,U) = -T(W,X,Y,U,Z) and both cyclic sums."""
    tensor = np.asarray(tensor, dtype=float)
    if tensor.ndim != 5 or len(set(tensor.shape)) != 1:
        raise DegenerateMetric(f"expected a rank 5 tensor, got shape {tensor.shape}")
    return SymmetryResiduals(*(_max_abs(_family_sum(tensor, perms)) for perms in _FAMILIES))


@attr.s(slots=True, frozen=True)
class RiemannResiduals:
    """Max-norm residual of each algebraic identity of R."""

    antisym_first: float = attr.ib()
    antisym_second: float = attr.ib()
    pair: float = attr.ib()
    bianchi: float = attr.ib()

    @property
    def worst(self) -> float:
        """Largest of the four residuals."""
        return max(attr.astuple(self))


def riemann_residuals(riem: np.ndarray) -> RiemannResiduals:
    """Residuals of R_ijkl = -R_jikl = -R_ijlk = R_klij and the first Bianchi identity."""
    riem = np.asarray(riem, dtype=float)
    return RiemannResiduals(
        antisym_first=_max_abs(riem + np.einsum("jikl->ijkl", riem)),
        antisym_second=_max_abs(riem + np.einsum("ijlk->ijkl", riem)),
        pair=_max_abs(riem - riem.transpose(2, 3, 0, 1)),
        bianchi=_max_abs(
            riem + np.einsum("jkil->ijkl", riem) + np.einsum("kijl->ijkl", riem)
        ),
    )


def _constraint_matrix(n: int) -> np.ndarray:
    """Stacked matrices of the identity families acting on flattened tensors."""
    size = n ** 5
    index = np.arange(size).reshape((n,) * 5)
    eye = np.eye(size)
    blocks = []
    for perms in _FAMILIES:
        block = eye.copy()
        for perm in perms:
            block = block + eye[np.einsum(perm, index).ravel()]
        blocks.append(block)
    return np.vstack(blocks)


def _rank(matrix: np.ndarray, label: str) -> int:
    """Numerical rank with a singular value gap check.

    Raises:
        RankTolerance: gap between kept and dropped singular values below RANK_MIN_GAP
    """
    values = linalg.svd(matrix, compute_uv=False)
    if values.size == 0 or values[0] == 0.0:
        return 0
    largest = values[0]
    rank = int(np.sum(values > RANK_RELATIVE_THRESHOLD * largest))
    if rank == 0:
        return 0
    if rank < values.size:
        dropped = values[rank]
    else:
        dropped = 0.0
    # round-off floor stands in for an exactly zero dropped value
    floor = MACHINE_EPS * largest * max(matrix.shape)
    gap = values[rank - 1] / max(dropped, floor)
    _LOGGER.debug("%s: rank %s of %s, gap %.3e", label, rank, matrix.shape, gap)
    if gap < RANK_MIN_GAP:
        raise RankTolerance(f"{label}: singular value gap {gap:.3e} below {RANK_MIN_GAP:.0e}")
    return rank


def symmetric_space_basis(n: int) -> np.ndarray:
    """Basis of the rank 5 tensors obeying the nabla R identities.

    Returns:
        np.ndarray: shape (dim_sym, n, n, n, n, n)
    """
    _check_dim(n)
    constraints = _constraint_matrix(n)
    rank = _rank(constraints, "identity constraints")
    _, _, vh = linalg.svd(constraints)
    basis = vh[rank:]
    return basis.reshape((basis.shape[0],) + (n,) * 5)


def _check_dim(n: int) -> None:
    if not MIN_DIM <= n <= RANK_CHECK_MAX_DIM:
        raise ConfigSemantic(
            f"rank check supports {MIN_DIM} <= n <= {RANK_CHECK_MAX_DIM}, got {n}"
        )


def polarizing_pairs(n: int, seed: int = 0) -> list:
    """Pairs (X, Z) whose values L(X, X, Z, Z, X) determine the cubic-quadratic form.

    Uses every pair from {e_i, e_i +- e_j, e_i + e_j + e_k} (normalized) plus
    seeded random pairs.
    """
    eye = np.eye(n)
    vectors = [eye[i] for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        vectors.extend((eye[i] + eye[j], eye[i] - eye[j]))
    for i, j, k in itertools.combinations(range(n), 3):
        vectors.append(eye[i] + eye[j] + eye[k])
    vectors = [vec / np.linalg.norm(vec) for vec in vectors]

    pairs = list(itertools.product(vectors, vectors))
    rng = np.random.default_rng(seed)
    for _ in range(POLARIZING_RANDOM_PAIRS):
        pairs.append((rng.standard_normal(n), rng.standard_normal(n)))
    return pairs


def lemma23_rank_check(n: int, seed: int = 0):
    """Dimensions before and after imposing L(X, X, Z, Z, X) = 0.

    Args:
        n (int): dimension, 2 <= n <= 4
        seed (int, optional): seed of the random pairs. Defaults to 0.

    Returns:
        tuple: (dim_sym, dim_constrained); the vanishing criterion holds when
        dim_constrained is 0

    Raises:
        RankTolerance: a rank could not be decided
    """
    basis = symmetric_space_basis(n)
    dim_sym = basis.shape[0]
    if dim_sym == 0:
        return 0, 0

    flat = basis.reshape(dim_sym, -1)
    rows = np.array(
        [np.einsum("a,b,c,d,e->abcde", x, x, z, z, x).ravel() for x, z in polarizing_pairs(n, seed)]
    )
    restricted = rows @ flat.T
    dim_constrained = dim_sym - _rank(restricted, "polarized hypothesis")
    _LOGGER.info("Rank check n=%s: dim_sym=%s dim_constrained=%s", n, dim_sym, dim_constrained)
    return dim_sym, dim_constrained


def polarization_residual(tensor: np.ndarray, x, y, z) -> float:
    """Residual of the polarized identity behind L(X,Y,Z,Z,Y) + 2 L(Y,X,Z,Z,Y) = 0.

    With c(X) = L(X, X, Z, Z, X) every L obeying the nabla R identities satisfies
    L(X,Y,Z,Z,Y) + 2 L(Y,X,Z,Z,Y) = (c(X+Y) + c(X-Y) - 2 c(X)) / 2,
    so the left side vanishes once c does.
    """
    x, y, z = (np.asarray(vec, dtype=float) for vec in (x, y, z))

    def value(*vectors):
        return float(np.einsum("abcde,a,b,c,d,e->", tensor, *vectors))

    def cubic(vec):
        return value(vec, vec, z, z, vec)

    lhs = value(x, y, z, z, y) + 2.0 * value(y, x, z, z, y)
    rhs = 0.5 * (cubic(x + y) + cubic(x - y) - 2.0 * cubic(x))
    return abs(lhs - rhs)
