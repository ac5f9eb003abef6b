"""Closed-form state families and their witness thresholds.

Werner states here are ``p |Phi><Phi| + (1 - p) I / D^2`` with ``|Phi>`` the
maximally entangled vector; the flip-operator convention is not used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NoSignChange, OddQubitCount
from .linalg import hermitian_eigenvalues, partial_transpose
from .witnesses import DEFAULT_EPS, check_order

__all__ = [
    "WernerParams",
    "AnomalousParams",
    "bell_state",
    "werner_state",
    "werner_spectrum",
    "werner_conditional_entropy",
    "werner_threshold",
    "werner_npt_threshold",
    "threshold_log2",
    "werner_threshold_log_domain",
    "anomalous_state",
    "anomalous_conditional_entropies",
    "find_anomalous_advantage",
]

_BRACKET = (1e-9, 1.0 - 1e-9)
_MAX_ITER = 200


@dataclass(frozen=True)
class WernerParams:
    marginal_dim: int
    bell_fraction: float

    def __post_init__(self):
        if self.marginal_dim < 2:
            raise ValueError(f"marginal_dim must be >= 2, got {self.marginal_dim}")
        if not 0.0 <= self.bell_fraction <= 1.0:
            raise ValueError(f"bell_fraction must lie in [0, 1], got {self.bell_fraction}")


@dataclass(frozen=True)
class AnomalousParams:
    """Mixing weights of the three orthogonal states and their shared Schmidt
    coefficients, both length-3 probability vectors."""

    mixing: tuple
    schmidt: tuple

    def __post_init__(self):
        for name in ("mixing", "schmidt"):
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != (3,) or v.min() < 0 or abs(v.sum() - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a 3-component probability vector, got {v}")
            object.__setattr__(self, name, tuple(float(x) for x in v))


def bell_state(d: int) -> np.ndarray:
    """Projector onto (1/sqrt(d)) sum_i |i>|i>."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    phi = np.zeros(d * d, dtype=complex)
    phi[:: d + 1] = 1.0 / math.sqrt(d)
    return np.outer(phi, phi.conj())


def werner_state(params: WernerParams) -> np.ndarray:
    d, p = params.marginal_dim, params.bell_fraction
    return p * bell_state(d) + (1.0 - p) * np.eye(d * d) / (d * d)


def werner_spectrum(d: int, p: float) -> np.ndarray:
    """Joint eigenvalues, largest first; both marginals are I/d."""
    n = d * d
    lam = np.full(n, (1.0 - p) / n)
    lam[0] += p
    return lam


def _renyi_werner(d: int, p: float, alpha: float) -> float:
    # Renyi entropy of werner_spectrum(d, p) without building the vector
    n = d * d
    big = p + (1.0 - p) / n
    small = (1.0 - p) / n
    if math.isinf(alpha):
        return -math.log2(big)
    if alpha == 1.0:
        h = -big * math.log2(big)
        if small > 0:
            h -= (n - 1) * small * math.log2(small)
        return h
    total = big**alpha + ((n - 1) * small**alpha if small > 0 else 0.0)
    return math.log2(total) / (1.0 - alpha)


def werner_conditional_entropy(d: int, p: float, order) -> float:
    """S_alpha(A|B) of the Werner state; equal to S_alpha(B|A) by symmetry."""
    return _renyi_werner(d, p, check_order(order)) - math.log2(d)


def _bisect(f, lo, hi, tol):
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise NoSignChange(f"no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0 or hi - lo < tol:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def werner_threshold(order, d: int, tol: float = 1e-12) -> float:
    """Bell fraction at which S_alpha(A|B) of the Werner state crosses zero."""
    alpha = check_order(order)
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    return _bisect(lambda p: werner_conditional_entropy(d, p, alpha), *_BRACKET, tol)


def werner_npt_threshold(d: int, tol: float = 1e-12) -> float:
    """Bell fraction at which the partial transpose of the Werner state
    acquires a negative eigenvalue, found from the numerical spectrum."""

    def min_eig(p):
        pt = partial_transpose(werner_state(WernerParams(d, p)), (d, d))
        return float(hermitian_eigenvalues(pt)[-1])

    return _bisect(min_eig, *_BRACKET, tol)


def threshold_log2(order, log2_dim: float):
    """``1/sqrt(x + 1)`` (order 2) or ``1/(x + 1)`` (order inf) at ``x = 2**log2_dim``.

    Evaluated in the log2 domain so that ``x`` may be far beyond float
    range. Returns ``(mantissa, exponent)`` with value ``mantissa * 2**exponent``
    and ``1 <= mantissa < 2``.
    """
    alpha = check_order(order)
    if alpha == 2.0:
        power = 0.5
    elif math.isinf(alpha):
        power = 1.0
    else:
        raise ValueError("closed-form thresholds exist only for orders 2 and inf")
    # log2(x + 1) = k + log2(1 + 2^-k), split to keep precision at large k
    if log2_dim >= 0:
        log2_x1 = log2_dim + math.log1p(2.0**-log2_dim) / math.log(2.0)
    else:
        log2_x1 = math.log1p(2.0**log2_dim) / math.log(2.0)
    log2_p = -power * log2_x1
    exponent = math.floor(log2_p)
    return 2.0 ** (log2_p - exponent), exponent


def werner_threshold_log_domain(order, qubits: int):
    """Closed-form Werner threshold for a D x D state on ``qubits`` qubits.

    D = 2**(qubits/2); ``qubits`` must be even. Returns ``(mantissa, exponent)``
    as :func:`threshold_log2`.
    """
    if qubits < 1 or qubits % 2:
        raise OddQubitCount(f"qubit count must be a positive even number, got {qubits}")
    return threshold_log2(order, qubits / 2)


def _anomalous_vectors(params: AnomalousParams) -> list[np.ndarray]:
    lam = np.sqrt(np.asarray(params.schmidt))
    vecs = []
    for shift in range(3):
        psi = np.zeros(9, dtype=complex)
        for j in range(3):
            psi[3 * ((j + shift) % 3) + j] = lam[j]
        vecs.append(psi)
    return vecs


def anomalous_state(params: AnomalousParams) -> np.ndarray:
    """Mixture of three orthogonal, equally entangled 3 x 3 pure states.

    Component ``k`` is ``sum_j sqrt(schmidt_j) |j + k mod 3, j>``.
    """
    rho = np.zeros((9, 9), dtype=complex)
    for weight, psi in zip(params.mixing, _anomalous_vectors(params)):
        rho += weight * np.outer(psi, psi.conj())
    return rho


def _renyi_rows(v: np.ndarray, alpha: float) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        if alpha == 1.0:
            return -np.sum(np.where(v > 0, v * np.log2(np.where(v > 0, v, 1.0)), 0.0), axis=-1)
        if math.isinf(alpha):
            return -np.log2(v.max(axis=-1))
        return np.log2(np.sum(np.where(v > 0, v, 0.0) ** alpha, axis=-1)) / (1.0 - alpha)


def anomalous_conditional_entropies(mixing, schmidt, order):
    """Closed-form (S(A|B), S(B|A)) for the anomalous family, vectorised.

    The joint spectrum is ``mixing``, the B marginal ``schmidt``, and the A
    marginal the cyclic convolution of the two.
    """
    alpha = check_order(order)
    mixing = np.asarray(mixing, dtype=float)
    schmidt = np.asarray(schmidt, dtype=float)
    mixing, schmidt = np.broadcast_arrays(mixing, schmidt)
    marg_a = np.stack(
        [sum(mixing[..., k] * schmidt[..., (i - k) % 3] for k in range(3)) for i in range(3)],
        axis=-1,
    )
    s_ab = _renyi_rows(mixing, alpha)
    return s_ab - _renyi_rows(schmidt, alpha), s_ab - _renyi_rows(marg_a, alpha)


def _interior_grid(resolution: int) -> np.ndarray:
    m = resolution
    pts = [(i, j, m - i - j) for i in range(1, m) for j in range(1, m - i)]
    return np.array(pts, dtype=float) / m


def find_anomalous_advantage(grid_resolution: int = 50, eps: float = DEFAULT_EPS):
    """All grid points where S_1(A|B) witnesses entanglement and S_2(A|B) does not.

    Both probability vectors range over interior points of the barycentric
    grid with spacing ``1/grid_resolution``. Results are ordered by mixing
    then Schmidt grid index.
    """
    if grid_resolution < 10:
        raise ValueError(f"grid_resolution must be >= 10, got {grid_resolution}")
    grid = _interior_grid(grid_resolution)
    mixing = grid[:, None, :]
    schmidt = grid[None, :, :]
    s1, _ = anomalous_conditional_entropies(mixing, schmidt, 1.0)
    s2, _ = anomalous_conditional_entropies(mixing, schmidt, 2.0)
    hits = np.argwhere((s1 < -eps) & (s2 >= -eps))
    return [AnomalousParams(tuple(grid[i]), tuple(grid[j])) for i, j in hits]
