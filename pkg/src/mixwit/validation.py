"""Input validation helpers for the estimator API."""

from __future__ import annotations

import math

import numpy as np

from .exceptions import ShapeMismatch
from .linalg import BipartiteShape, as_shape, validate_density


def check_density_batch(X, tol_neg: float = 1e-10) -> np.ndarray:
    """Validate one state ``(N, N)`` or a batch ``(n, N, N)`` of states.

    Returns a complex array of shape ``(n, N, N)`` holding the cleaned states
    (see :func:`mixwit.linalg.validate_density`).
    """
    X = np.asarray(X)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise ShapeMismatch(f"expected states of shape (N, N) or (n, N, N), got {X.shape}")
    if X.shape[0] == 0:
        raise ValueError("empty batch of states")
    return np.stack([validate_density(m, tol_neg) for m in X])


def resolve_shape(dim: int, dim_a=None, dim_b=None) -> BipartiteShape:
    """Bipartition of a joint dimension from whichever factors are given.

    With neither factor, ``dim`` must be a perfect square (D x D).
    """
    if dim_a is None and dim_b is None:
        d = math.isqrt(dim)
        if d * d != dim:
            raise ShapeMismatch(f"cannot infer a D x D split of dimension {dim}; pass dim_a/dim_b")
        return BipartiteShape(d, d)
    if dim_a is None:
        dim_a, rem = divmod(dim, dim_b)
    elif dim_b is None:
        dim_b, rem = divmod(dim, dim_a)
    else:
        rem = dim - dim_a * dim_b
    if rem:
        raise ShapeMismatch(f"dimension {dim} does not factor as {dim_a} x {dim_b}")
    return as_shape((dim_a, dim_b))
