"""Closed-form entropy bounds and simplex-geometry fractions.

Extremal von Neumann entropies at fixed purity and their spectra, the
integer plateau count kappa, the share of the simplex that is "nearly pure"
or "nearly maximally mixed", and the marginal eigenvalue density of uniformly
random D x D pure states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .exceptions import DimensionMismatch, PurityOutOfRange
from .witnesses import renyi_entropy

__all__ = [
    "PurityPoint",
    "EntropyBounds",
    "kappa_of_purity",
    "max_entropy_vector",
    "min_entropy_vector",
    "entropy_bounds",
    "nearly_pure_fraction",
    "nearly_mm_fraction",
    "nearly_mm_fraction_ball",
    "marginal_eigenvalue_density",
]


@dataclass(frozen=True)
class PurityPoint:
    dim: int
    purity: float

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not 1.0 / self.dim - 1e-12 <= self.purity <= 1.0 + 1e-12:
            raise PurityOutOfRange(f"purity {self.purity!r} outside [1/{self.dim}, 1]")


@dataclass(frozen=True)
class EntropyBounds:
    s_min: float
    s_max: float
    p_min_vector: np.ndarray
    p_max_vector: np.ndarray


def kappa_of_purity(purity: float) -> int:
    """floor(1/purity), exact when purity is the reciprocal of an integer."""
    if not 0.0 < purity <= 1.0 + 1e-12:
        raise PurityOutOfRange(f"purity must lie in (0, 1], got {purity!r}")
    inv = 1.0 / purity
    nearest = round(inv)
    if abs(inv - nearest) <= 1e-9 * max(1.0, inv):
        return max(int(nearest), 1)
    return max(int(math.floor(inv)), 1)


def max_entropy_vector(point: PurityPoint) -> np.ndarray:
    """(p0, ..., p0, 1 - (N-1) p0): the entropy maximiser at fixed purity."""
    n, purity = point.dim, point.purity
    if n == 1:
        return np.ones(1)
    s = math.sqrt(max(n * purity - 1.0, 0.0) / (n - 1))
    # (1 - s) / n without cancellation as s -> 1
    p0 = (n * max(1.0 - purity, 0.0) / (n - 1)) / (1.0 + s) / n
    p = np.full(n, p0)
    p[-1] = 1.0 - (n - 1) * p0
    return p


def min_entropy_vector(point: PurityPoint) -> np.ndarray:
    """(p0, ..., p0, 1 - kappa p0, 0, ..., 0) with kappa plateau entries."""
    n, purity = point.dim, point.purity
    kappa = kappa_of_purity(purity)
    root = math.sqrt(max((kappa + 1) * purity - 1.0, 0.0) / kappa)
    p0 = (1.0 + root) / (kappa + 1)
    tail = max(1.0 - kappa * p0, 0.0)
    p = np.zeros(n)
    p[:kappa] = p0
    if kappa < n:
        p[kappa] = tail
    return p


def entropy_bounds(point: PurityPoint) -> EntropyBounds:
    """Min and max von Neumann entropy (bits) over spectra of given purity."""
    p_min = min_entropy_vector(point)
    p_max = max_entropy_vector(point)
    return EntropyBounds(
        s_min=renyi_entropy(p_min / p_min.sum(), 1.0),
        s_max=renyi_entropy(p_max / p_max.sum(), 1.0),
        p_min_vector=p_min,
        p_max_vector=p_max,
    )


def nearly_pure_fraction(n: int) -> float:
    """Share of the simplex whose largest component is at least 1/2."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return n / 2.0 ** (n - 1)


def nearly_mm_fraction(n: int) -> float:
    """Closed-form share of the simplex with purity in [1/n, 1/(n-1)].

    ``(1/sqrt(n)) (pi / (n (n-1)))^(n/2) Gamma(n) / Gamma(n/2 + 1)``. Note that
    this ratio compares an n-dimensional ball with the (n-1)-dimensional
    simplex; :func:`nearly_mm_fraction_ball` gives the volume ratio of the
    (n-1)-ball that actually fills that purity range.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    log_value = (
        -0.5 * math.log(n)
        + 0.5 * n * math.log(math.pi / (n * (n - 1)))
        + gammaln(n)
        - gammaln(n / 2 + 1)
    )
    return math.exp(log_value)


def nearly_mm_fraction_ball(n: int) -> float:
    """Volume share of the inscribed (n-1)-ball of the probability simplex.

    That ball is exactly the set with purity in [1/n, 1/(n-1)], so this is
    the probability a flat-Dirichlet draw lands there.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    k = n - 1
    radius = 1.0 / math.sqrt(n * k)
    log_ball = 0.5 * k * math.log(math.pi) - gammaln(0.5 * k + 1) + k * math.log(radius)
    log_simplex = 0.5 * math.log(n) - gammaln(n)
    return math.exp(log_ball - log_simplex)


def marginal_eigenvalue_density(lam, d: int) -> float:
    """Density of marginal spectra of Haar-random d x d pure states.

    Defined on the (d-1)-simplex, with the normalisation constraint already
    integrated out: ``Gamma(d^2) / prod_j Gamma(d-j) Gamma(d+1-j)`` times the
    squared Vandermonde determinant of ``lam``.
    """
    lam = np.asarray(lam, dtype=float).ravel()
    if lam.size != d:
        raise DimensionMismatch(f"expected {d} eigenvalues, got {lam.size}")
    j = np.arange(d)
    log_norm = gammaln(d * d) - np.sum(gammaln(d - j) + gammaln(d + 1 - j))
    iu = np.triu_indices(d, k=1)
    vandermonde = np.prod((lam[iu[0]] - lam[iu[1]]) ** 2)
    return float(math.exp(log_norm) * vandermonde)
