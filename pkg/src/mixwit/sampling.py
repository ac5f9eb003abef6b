"""Random spectra, Haar unitaries and random bipartite density matrices.

Every sampler draws all of its randomness from one :class:`StreamKey`, a
``(master_seed, sample_index)`` pair hashed into a counter-based Philox
generator. A sample is therefore reproducible on its own, independent of how
an ensemble is split across workers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _hitandrun
from .exceptions import MixwitError, PurityOutOfRange, RejectionExhausted
from .linalg import as_shape, validate_density

__all__ = [
    "StreamKey",
    "EnsembleKind",
    "EnsembleSpec",
    "SliceSamplerConfig",
    "sample_simplex_uniform",
    "sample_sphere_slice",
    "sample_sphere_slice_chain",
    "sample_haar_unitary",
    "sample_naive_probability_vector",
    "sample_spectrum",
    "sample_density_matrix",
    "sample_pure_state",
]

_UINT64 = 2**64


@dataclass(frozen=True)
class StreamKey:
    master_seed: int
    sample_index: int

    def __post_init__(self):
        for name in ("master_seed", "sample_index"):
            value = getattr(self, name)
            if not 0 <= int(value) < _UINT64:
                raise ValueError(f"{name} must fit in an unsigned 64-bit integer, got {value}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(int(self.master_seed), spawn_key=(int(self.sample_index),))
        return np.random.Generator(np.random.Philox(seq))


def _rng(key) -> np.random.Generator:
    if isinstance(key, np.random.Generator):
        return key
    if isinstance(key, StreamKey):
        return key.generator()
    return StreamKey(*key).generator()


class EnsembleKind(str, enum.Enum):
    UE = "UE"
    UP = "UP"
    NAIVE = "naive"
    POWER = "power"
    PURE = "pure"


@dataclass(frozen=True)
class EnsembleSpec:
    """What to sample: ensemble kind, marginal dimension D, sample count.

    ``power`` only applies to :attr:`EnsembleKind.POWER` and defaults to D.
    """

    kind: EnsembleKind
    marginal_dim: int
    count: int = 1
    master_seed: int = 0
    power: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if self.marginal_dim < 2:
            raise ValueError(f"marginal_dim must be >= 2, got {self.marginal_dim}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.power is not None and not self.power > 0:
            raise ValueError(f"power must be > 0, got {self.power}")

    @property
    def effective_power(self) -> float:
        return float(self.marginal_dim if self.power is None else self.power)

    def key(self, sample_index: int) -> StreamKey:
        return StreamKey(self.master_seed, sample_index)


@dataclass(frozen=True)
class SliceSamplerConfig:
    """How to draw uniform points on a constant-purity slice.

    Points inside the simplex in-sphere are always drawn directly. Outside it,
    ``mode`` selects the strategy:

    ``"auto"``
        rejection from the sphere, falling back to hit-and-run once no
        proposal has been accepted after ``min(max_tries, 1/acceptance_floor)``
        tries (i.e. the estimated acceptance rate is below the floor).
    ``"rejection"``
        rejection only; raises :class:`RejectionExhausted` after ``max_tries``.
    ``"hit-and-run"``
        hit-and-run only.
    """

    mode: str = "auto"
    max_tries: int = 100_000
    burn_in: int = 1000
    thinning: int = 50
    acceptance_floor: float = 1e-3

    def __post_init__(self):
        if self.mode not in ("auto", "rejection", "hit-and-run"):
            raise ValueError(f"unknown slice sampler mode {self.mode!r}")
        if self.max_tries < 1:
            raise ValueError("max_tries must be >= 1")
        if self.mode != "rejection" and (self.burn_in < 100 or self.thinning < 10):
            raise ValueError("hit-and-run needs burn_in >= 100 and thinning >= 10")
        if not 0 < self.acceptance_floor < 1:
            raise ValueError("acceptance_floor must lie in (0, 1)")


DEFAULT_SLICE_CONFIG = SliceSamplerConfig()


def _simplex(n: int, rng: np.random.Generator) -> np.ndarray:
    e = rng.standard_exponential(n)
    return e / e.sum()


def sample_simplex_uniform(n: int, key) -> np.ndarray:
    """Flat Dirichlet draw on the (n-1)-simplex via normalised exponentials."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _simplex(n, _rng(key))


def _naive(n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random(n)
    return u / u.sum()


def sample_naive_probability_vector(n: int, key) -> np.ndarray:
    """``n`` iid uniform(0, 1) variates normalised by their sum.

    This is *not* uniform on the simplex; it concentrates near the centroid.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _naive(n, _rng(key))


def _slice_radius(n: int, purity: float) -> float:
    if not 1.0 / n - 1e-12 <= purity <= 1.0 + 1e-12:
        raise PurityOutOfRange(f"purity {purity!r} outside [1/{n}, 1]")
    return math.sqrt(max(purity - 1.0 / n, 0.0))


def _sphere_directions(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((size, n))
    g -= g.mean(axis=1, keepdims=True)
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g


def _hit_and_run(n, radius, cfg, rng, size=1):
    steps = cfg.burn_in + (size - 1) * cfg.thinning
    normals = rng.standard_normal((steps, n))
    picks = rng.random(steps)
    swaps = rng.random((steps, 2))
    center = 1.0 / n
    vertex_dir = np.full(n, -center)
    vertex_dir[0] += 1.0
    x0 = center + radius * vertex_dir / np.linalg.norm(vertex_dir)
    out = np.empty((size, n))
    _hitandrun.run_chain(x0, radius, normals, picks, swaps, cfg.burn_in, cfg.thinning, out)
    for row in out:
        rng.shuffle(row)
    return out


def _finish(p: np.ndarray) -> np.ndarray:
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def _sphere_slice(n, purity, cfg, rng) -> np.ndarray:
    radius = _slice_radius(n, purity)
    center = 1.0 / n
    if n == 1 or radius == 0.0:
        return np.full(n, center)
    inradius = 1.0 / math.sqrt(n * (n - 1))
    if radius <= inradius * (1 + 1e-12):
        return _finish(center + radius * _sphere_directions(n, 1, rng)[0])
    if cfg.mode == "hit-and-run":
        return _finish(_hit_and_run(n, radius, cfg, rng)[0])
    budget = cfg.max_tries
    if cfg.mode == "auto":
        budget = min(budget, math.ceil(1.0 / cfg.acceptance_floor))
    tried = 0
    batch = 64
    while tried < budget:
        size = min(batch, budget - tried)
        pts = center + radius * _sphere_directions(n, size, rng)
        ok = np.flatnonzero(pts.min(axis=1) >= 0.0)
        if ok.size:
            return _finish(pts[ok[0]])
        tried += size
        batch = min(batch * 4, 4096)
    if cfg.mode == "rejection":
        raise RejectionExhausted(
            f"no feasible point in {tried} tries (n={n}, purity={purity})"
        )
    return _finish(_hit_and_run(n, radius, cfg, rng)[0])


def sample_sphere_slice(n: int, purity: float, cfg: SliceSamplerConfig | None = None, key=(0, 0)):
    """Uniform point on {p in simplex : sum p_i^2 = purity}.

    The slice is a sphere of radius ``sqrt(purity - 1/n)`` around the
    centroid, clipped by the simplex; see :class:`SliceSamplerConfig` for the
    strategy used.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _sphere_slice(n, purity, cfg or DEFAULT_SLICE_CONFIG, _rng(key))


def sample_sphere_slice_chain(n: int, purity: float, size: int, cfg=None, key=(0, 0)):
    """``size`` thinned hit-and-run states from a single chain.

    Cheaper than independent calls when many points at one purity are needed;
    consecutive rows are correlated.
    """
    cfg = cfg or DEFAULT_SLICE_CONFIG
    radius = _slice_radius(n, purity)
    rng = _rng(key)
    if n < 3 or radius == 0.0:
        return np.stack([_sphere_slice(n, purity, cfg, rng) for _ in range(size)])
    out = _hit_and_run(n, radius, cfg, rng, size=size)
    return np.clip(out, 0.0, None) / np.clip(out, 0.0, None).sum(axis=1, keepdims=True)


def _haar(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_haar_unitary(n: int, key) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix, phase corrected."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return _haar(n, _rng(key))


def _spectrum(spec: EnsembleSpec, n: int, cfg, rng) -> np.ndarray:
    kind = spec.kind
    if kind is EnsembleKind.UE:
        return _simplex(n, rng)
    if kind is EnsembleKind.UP:
        target = rng.uniform(1.0 / n, 1.0)
        return _sphere_slice(n, target, cfg, rng)
    if kind is EnsembleKind.NAIVE:
        return _naive(n, rng)
    if kind is EnsembleKind.POWER:
        lam = _simplex(n, rng) ** spec.effective_power
        return lam / lam.sum()
    raise MixwitError(f"ensemble kind {kind.value!r} has no mixed-state spectrum")


def sample_spectrum(spec: EnsembleSpec, shape, slice_cfg=None, key=(0, 0)) -> np.ndarray:
    """The eigenvalue vector :func:`sample_density_matrix` uses for ``key``."""
    shape = as_shape(shape)
    return _spectrum(spec, shape.dim, slice_cfg or DEFAULT_SLICE_CONFIG, _rng(key))


def sample_density_matrix(spec: EnsembleSpec, shape=None, slice_cfg=None, key=(0, 0)) -> np.ndarray:
    """Draw ``U diag(lambda) U^dagger`` for the ensemble in ``spec``.

    The spectrum is drawn first, then the Haar unitary, both from ``key``.
    ``shape`` defaults to ``(D, D)`` with D the spec's marginal dimension.
    """
    shape = as_shape(shape or (spec.marginal_dim, spec.marginal_dim))
    rng = _rng(key)
    lam = _spectrum(spec, shape.dim, slice_cfg or DEFAULT_SLICE_CONFIG, rng)
    u = _haar(shape.dim, rng)
    rho = (u * lam) @ u.conj().T
    return validate_density(0.5 * (rho + rho.conj().T))


def sample_pure_state(shape, key) -> np.ndarray:
    """Projector onto the first column of a Haar unitary on the joint space."""
    shape = as_shape(shape)
    psi = _haar(shape.dim, _rng(key))[:, 0]
    return np.outer(psi, psi.conj())

