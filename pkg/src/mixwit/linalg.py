"""Dense complex-matrix primitives for bipartite states.

Tensor index convention (fixed project-wide): row-major, A-major, i.e. the
joint basis index of ``|i>_A |k>_B`` is ``i * dim_b + k``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import NonFinite, NonHermitian, NotAState, ShapeMismatch

__all__ = [
    "BipartiteShape",
    "as_shape",
    "hermitian_eigenvalues",
    "tensor_product",
    "partial_trace",
    "partial_transpose",
    "trace_norm",
    "validate_density",
    "HERMITIAN_RTOL",
]

# per-dimension tolerance on max |M - M^dagger| and on |Tr M - 1|
HERMITIAN_RTOL = 1e-12


class BipartiteShape(NamedTuple):
    dim_a: int
    dim_b: int

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


def as_shape(shape) -> BipartiteShape:
    if isinstance(shape, BipartiteShape):
        return shape
    dim_a, dim_b = (int(x) for x in shape)
    if dim_a < 1 or dim_b < 1:
        raise ShapeMismatch(f"subsystem dimensions must be >= 1, got {shape!r}")
    return BipartiteShape(dim_a, dim_b)


def _check_finite(m: np.ndarray) -> None:
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has non-finite entries")


def _check_square(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ShapeMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    return m.shape[0]


def _check_hermitian(m: np.ndarray) -> None:
    n = m.shape[0]
    asym = np.max(np.abs(m - m.conj().T))
    if asym > HERMITIAN_RTOL * n:
        raise NonHermitian(f"max |M - M^dagger| = {asym:.3e} exceeds {HERMITIAN_RTOL * n:.1e}")


def _check_bipartite(rho: np.ndarray, shape: BipartiteShape) -> None:
    n = _check_square(rho)
    if n != shape.dim:
        raise ShapeMismatch(
            f"matrix dimension {n} does not factor as {shape.dim_a} x {shape.dim_b}"
        )


def hermitian_eigenvalues(m, return_vectors: bool = False):
    """Eigenvalues of a Hermitian matrix, sorted in descending order.

    Parameters
    ----------
    m : array_like, shape (N, N)
        Hermitian matrix (within ``1e-12 * N`` entrywise).
    return_vectors : bool
        If True, also return the matching eigenvectors as columns.

    Returns
    -------
    w : ndarray, shape (N,)
    v : ndarray, shape (N, N)
        Only if ``return_vectors``.
    """
    m = np.asarray(m)
    _check_square(m)
    _check_finite(m)
    _check_hermitian(m)
    if return_vectors:
        w, v = np.linalg.eigh(m)
        return w[::-1], v[:, ::-1]
    return np.linalg.eigvalsh(m)[::-1]


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b`` in the A-major convention."""
    a = np.asarray(a)
    b = np.asarray(b)
    _check_finite(a)
    _check_finite(b)
    return np.kron(a, b)


def partial_trace(rho, shape, keep: str = "A") -> np.ndarray:
    """Reduced state on subsystem ``keep`` (``"A"`` or ``"B"``)."""
    rho = np.asarray(rho)
    shape = as_shape(shape)
    _check_bipartite(rho, shape)
    t = rho.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    keep = keep.upper()
    if keep == "A":
        return np.einsum("ikjk->ij", t)
    if keep == "B":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(rho, shape, side: str = "B") -> np.ndarray:
    """Transpose the indices of one subsystem of a bipartite operator."""
    rho = np.asarray(rho)
    shape = as_shape(shape)
    _check_bipartite(rho, shape)
    t = rho.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    side = side.upper()
    if side == "B":
        t = t.transpose(0, 3, 2, 1)
    elif side == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return t.reshape(shape.dim, shape.dim)


def trace_norm(m) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def validate_density(m, tol_neg: float = 1e-10) -> np.ndarray:
    """Check the density-matrix invariants and return a cleaned copy.

    Small negative eigenvalues in ``[-tol_neg, 0)`` are clamped to zero and
    the trace is renormalised; anything worse raises :class:`NotAState`.
    """
    m = np.asarray(m, dtype=complex)
    n = _check_square(m)
    _check_finite(m)
    asym = np.max(np.abs(m - m.conj().T))
    if asym > HERMITIAN_RTOL * n:
        raise NotAState("hermitian", f"max |M - M^dagger| = {asym:.3e}")
    tr = np.trace(m).real
    if abs(tr - 1.0) > HERMITIAN_RTOL * n:
        raise NotAState("trace", f"trace = {tr!r}")
    h = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(h)
    if w[0] < -tol_neg:
        raise NotAState("positivity", f"min eigenvalue = {w[0]:.3e} < -{tol_neg:.1e}")
    if w[0] < 0:
        w = np.clip(w, 0.0, None)
        w /= w.sum()
        h = (v * w) @ v.conj().T
        h = 0.5 * (h + h.conj().T)
    return h
