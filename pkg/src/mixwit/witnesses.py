"""Mixedness functionals and entanglement witnesses.

All entropies are in bits. Renyi orders are plain floats: ``1.0`` is the von
Neumann limit and ``math.inf`` the min-entropy limit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields

import numpy as np

from .exceptions import InvalidOrder, MixwitError, ShapeMismatch
from .linalg import (
    as_shape,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
)

__all__ = [
    "VON_NEUMANN",
    "COLLISION",
    "MIN_ENTROPY",
    "DEFAULT_EPS",
    "WitnessReport",
    "purity",
    "renyi_entropy",
    "conditional_renyi",
    "majorizes",
    "majorization_criterion",
    "mixedness_witness",
    "npt_check",
    "log_negativity",
    "classical_mutual_information",
    "witness_report",
]

VON_NEUMANN = 1.0
COLLISION = 2.0
MIN_ENTROPY = math.inf

DEFAULT_EPS = 1e-10
# eigenvalues down to this are treated as round-off and clamped to zero
CLAMP_TOL = 1e-10


def check_order(order) -> float:
    try:
        alpha = float(order)
    except (TypeError, ValueError):
        raise InvalidOrder(f"Renyi order must be a positive real, got {order!r}") from None
    if math.isnan(alpha) or alpha <= 0:
        raise InvalidOrder(f"Renyi order must be > 0, got {order!r}")
    return alpha


def _probabilities(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0:
        raise MixwitError("empty probability vector")
    if not np.all(np.isfinite(p)):
        raise MixwitError("probability vector has non-finite entries")
    if p.min() < -CLAMP_TOL:
        raise MixwitError(f"negative probability {p.min():.3e}")
    total = p.sum()
    if abs(total - 1.0) > 1e-12 * p.size + 1e-13:
        raise MixwitError(f"probabilities sum to {total!r}, not 1")
    return np.clip(p, 0.0, None)


def _renyi(p: np.ndarray, alpha: float) -> float:
    # p is clamped and normalised; 0 log 0 = 0
    nz = p[p > 0]
    if alpha == 1.0:
        return float(-np.sum(nz * np.log2(nz)))
    if math.isinf(alpha):
        return float(-np.log2(nz.max()))
    return float(np.log2(np.sum(nz**alpha)) / (1.0 - alpha))


def purity(rho) -> float:
    """Tr[rho^2] as the squared Frobenius norm of a Hermitian matrix."""
    rho = np.asarray(rho)
    return float(np.sum(np.abs(rho) ** 2))


def renyi_entropy(p, order) -> float:
    """Renyi entropy of order ``order`` of a probability vector, in bits."""
    return _renyi(_probabilities(p), check_order(order))


def _spectrum(m) -> np.ndarray:
    w = hermitian_eigenvalues(m)
    return np.clip(w, 0.0, None)


def conditional_renyi(rho, shape, order, conditioned_on: str = "B") -> float:
    """S_alpha(AB) - S_alpha(X) with X the conditioning subsystem."""
    shape = as_shape(shape)
    alpha = check_order(order)
    cond = conditioned_on.upper()
    if cond not in ("A", "B"):
        raise ValueError(f"conditioned_on must be 'A' or 'B', got {conditioned_on!r}")
    joint = _renyi(_spectrum(rho), alpha)
    marginal = _renyi(_spectrum(partial_trace(rho, shape, keep=cond)), alpha)
    return joint - marginal


def majorizes(p, q) -> bool:
    """True iff ``p`` majorizes ``q``; the shorter vector is zero-padded."""
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    n = max(p.size, q.size)
    p = np.pad(p, (0, n - p.size))
    q = np.pad(q, (0, n - q.size))
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    k = np.arange(1, n + 1)
    return bool(np.all(cp >= cq - 1e-12 * k))


def majorization_criterion(rho, shape) -> bool:
    """True iff both marginal spectra majorize the joint spectrum."""
    shape = as_shape(shape)
    joint = _spectrum(rho)
    return all(
        majorizes(_spectrum(partial_trace(rho, shape, keep=side)), joint) for side in "AB"
    )


def mixedness_witness(rho, shape, order, eps: float = DEFAULT_EPS, conditioned_on=None) -> bool:
    """True iff the order-``order`` mixedness criterion is violated.

    By default the conditional entropy is minimised over both conditioning
    sides; pass ``conditioned_on="A"`` or ``"B"`` for a one-sided test.
    """
    sides = ("A", "B") if conditioned_on is None else (conditioned_on,)
    value = min(conditional_renyi(rho, shape, order, conditioned_on=s) for s in sides)
    return value < -eps


def npt_check(rho, shape, eps: float = DEFAULT_EPS):
    """Return ``(is_npt, min_eigenvalue)`` of the partial transpose."""
    w = hermitian_eigenvalues(partial_transpose(rho, shape))
    min_eig = float(w[-1])
    return min_eig < -eps, min_eig


def log_negativity(rho, shape) -> float:
    """log2 of the trace norm of the partial transpose (0 for PPT states)."""
    w = hermitian_eigenvalues(partial_transpose(rho, shape))
    return float(np.log2(max(np.sum(np.abs(w)), 1.0)))


def _shannon(pmf: np.ndarray) -> float:
    nz = pmf[pmf > 0]
    return float(-np.sum(nz * np.log2(nz)))


def classical_mutual_information(rho, shape) -> float:
    """Mutual information of computational-basis measurements on A and B."""
    shape = as_shape(shape)
    rho = np.asarray(rho)
    if rho.shape != (shape.dim, shape.dim):
        raise ShapeMismatch(f"state of shape {rho.shape} does not match {shape}")
    joint = np.clip(np.diagonal(rho).real, 0.0, None).reshape(shape.dim_a, shape.dim_b)
    joint = joint / joint.sum()
    mi = _shannon(joint.sum(1)) + _shannon(joint.sum(0)) - _shannon(joint.ravel())
    return max(mi, 0.0)


@dataclass(frozen=True)
class WitnessReport:
    """Per-state purities, conditional entropies and witness verdicts.

    ``sX_cond_ab`` is the minimum of S_X(A|B) and S_X(B|A).
    """

    joint_purity: float
    marginal_purity_a: float
    marginal_purity_b: float
    s1_cond_ab: float
    s2_cond_ab: float
    sinf_cond_ab: float
    negativity_min_eig: float
    log_negativity: float
    s1_witness: bool
    s2_witness: bool
    sinf_witness: bool
    npt: bool

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in self.field_names()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @property
    def any_mixedness_witness(self) -> bool:
        return self.s1_witness or self.s2_witness or self.sinf_witness


def witness_report(rho, shape, eps: float = DEFAULT_EPS) -> WitnessReport:
    """Evaluate every witness on one state, sharing the eigendecompositions."""
    shape = as_shape(shape)
    rho = np.asarray(rho)
    joint = _spectrum(rho)
    rho_a = partial_trace(rho, shape, keep="A")
    rho_b = partial_trace(rho, shape, keep="B")
    spec_a = _spectrum(rho_a)
    spec_b = _spectrum(rho_b)
    pt = hermitian_eigenvalues(partial_transpose(rho, shape))

    def cond(alpha):
        s_ab = _renyi(joint, alpha)
        return min(s_ab - _renyi(spec_b, alpha), s_ab - _renyi(spec_a, alpha))

    s1, s2, sinf = cond(1.0), cond(2.0), cond(math.inf)
    min_eig = float(pt[-1])
    return WitnessReport(
        joint_purity=purity(rho),
        marginal_purity_a=purity(rho_a),
        marginal_purity_b=purity(rho_b),
        s1_cond_ab=s1,
        s2_cond_ab=s2,
        sinf_cond_ab=sinf,
        negativity_min_eig=min_eig,
        log_negativity=float(np.log2(max(np.sum(np.abs(pt)), 1.0))),
        s1_witness=s1 < -eps,
        s2_witness=s2 < -eps,
        sinf_witness=sinf < -eps,
        npt=min_eig < -eps,
    )
