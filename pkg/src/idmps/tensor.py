"""Dense complex tensors, matricization, and the SVD contract.

A state over N finite physical dimensions is stored as a flat complex
array in row-major order (first index slowest). Matricization groups
the first ``cut`` indices into rows and the rest into columns; every
decomposition in this package is built on that reshape plus a thin SVD
with a deterministic phase gauge.
"""

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    CutOutOfRange,
    EmptyShape,
    KeepOutOfRange,
    ShapeMismatch,
)

#: Singular values below this fraction of the largest one are dropped.
DEFAULT_RANK_TOL = 1e-12


@dataclass(frozen=True)
class DenseTensor:
    """Complex coefficient tensor c_{k1..kN} over finite physical dimensions.

    ``data`` is flat, row-major (k1 slowest); ``shape`` holds d_1..d_N.
    """

    shape: tuple[int, ...]
    data: np.ndarray

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def size(self) -> int:
        return prod(self.shape)

    def as_array(self) -> np.ndarray:
        """The data as an N-dimensional array (a reshaped view)."""
        return self.data.reshape(self.shape)


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD after the rank cut: u columns / vh rows are orthonormal,
    s is nonincreasing and strictly above the cut threshold."""

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray
    rank: int


def tensor_new(shape: Sequence[int], data: Sequence[complex] | np.ndarray) -> DenseTensor:
    """Validate and copy ``data`` into a DenseTensor with the given shape."""
    dims = tuple(int(d) for d in shape)
    if len(dims) == 0:
        raise EmptyShape("tensor needs at least one axis")
    if any(d < 1 for d in dims):
        raise ShapeMismatch(f"all dimensions must be >= 1, got {dims}")
    flat = np.array(data, dtype=complex).reshape(-1)
    if flat.size != prod(dims):
        raise ShapeMismatch(
            f"data length {flat.size} does not match shape {dims} "
            f"(expected {prod(dims)})"
        )
    return DenseTensor(shape=dims, data=flat)


def tensor_norm(t: DenseTensor) -> float:
    """Euclidean (Hilbert-space) norm of the coefficient data."""
    return float(np.linalg.norm(t.data))


def _check_cut(ndim: int, cut: int) -> None:
    if not 1 <= cut <= ndim - 1:
        raise CutOutOfRange(f"cut must be in 1..{ndim - 1}, got {cut}")


def matricize(t: DenseTensor, cut: int) -> np.ndarray:
    """Unfold ``t`` into a (d_1..d_cut) x (d_{cut+1}..d_N) matrix.

    Row index = row-major flattening of the first ``cut`` physical
    indices, column index = flattening of the rest.
    """
    _check_cut(t.ndim, cut)
    rows = prod(t.shape[:cut])
    return t.data.reshape(rows, -1)


def dematricize(m: np.ndarray, shape: Sequence[int], cut: int) -> DenseTensor:
    """Inverse of :func:`matricize`; exact bijection for matching shapes."""
    dims = tuple(int(d) for d in shape)
    if len(dims) == 0:
        raise EmptyShape("tensor needs at least one axis")
    _check_cut(len(dims), cut)
    expected = (prod(dims[:cut]), prod(dims[cut:]))
    if m.shape != expected:
        raise ShapeMismatch(f"matrix shape {m.shape} does not unfold to {dims} at cut {cut}")
    return DenseTensor(shape=dims, data=np.array(m, dtype=complex).reshape(-1))


def svd(m: np.ndarray, rank_tol: float = DEFAULT_RANK_TOL) -> SvdResult:
    """Thin SVD with rank cut and a deterministic phase gauge.

    Singular values <= rank_tol * s_max are discarded (with the matching
    u columns / vh rows). Each retained (u column, vh row) pair is
    rotated so the largest-magnitude entry of the u column is real and
    positive, which fixes the output uniquely away from degenerate
    values.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise ShapeMismatch(f"svd needs a nonempty matrix, got shape {a.shape}")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    smax = s[0] if s.size else 0.0
    rank = int(np.count_nonzero(s > rank_tol * smax)) if smax > 0 else 0
    u, s, vh = u[:, :rank].copy(), s[:rank].copy(), vh[:rank].copy()
    for k in range(rank):
        pivot = u[np.argmax(np.abs(u[:, k])), k]
        phase = pivot / abs(pivot)
        u[:, k] *= phase.conjugate()
        vh[k] *= phase
    return SvdResult(u=u, s=s, vh=vh, rank=rank)


def low_rank_error(s: Sequence[float] | np.ndarray, keep: int) -> float:
    """Frobenius-norm error of the best rank-``keep`` approximation,
    sqrt of the discarded squared singular values."""
    vals = np.asarray(s, dtype=float)
    if not 0 <= keep <= vals.size:
        raise KeepOutOfRange(f"keep must be in 0..{vals.size}, got {keep}")
    return float(np.sqrt(np.sum(vals[keep:] ** 2)))
