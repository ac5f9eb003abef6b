"""Seeded Monte Carlo drivers behind the command-line interface.

Every sample ``i`` of an ensemble is drawn from ``StreamKey(seed, i)``, so a
run is reproducible for any worker count: workers receive contiguous index
ranges and results are reassembled in index order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .bounds import (
    PurityPoint,
    entropy_bounds,
    kappa_of_purity,
    marginal_eigenvalue_density,
    nearly_mm_fraction,
    nearly_pure_fraction,
)
from .linalg import partial_trace
from .sampling import (
    EnsembleKind,
    EnsembleSpec,
    SliceSamplerConfig,
    StreamKey,
    sample_density_matrix,
    sample_naive_probability_vector,
    sample_pure_state,
    sample_simplex_uniform,
)
from .states import WernerParams, werner_npt_threshold, werner_state, werner_threshold
from .witnesses import (
    DEFAULT_EPS,
    WitnessReport,
    classical_mutual_information,
    renyi_entropy,
    witness_report,
)

__all__ = [
    "RunConfig",
    "StudySummary",
    "ClaimResult",
    "sample_state",
    "ensemble_records",
    "summarize",
    "cmd_ensemble_study",
    "cmd_werner_sweep",
    "cmd_appendix_check",
    "cmd_bounds",
    "SUMMARY_COLUMNS",
]

ORDERS = {"s1": 1.0, "s2": 2.0, "sinf": math.inf}

SUMMARY_COLUMNS = [
    "dim",
    "ensemble",
    "samples",
    "pct_s1",
    "pct_s2",
    "pct_sinf",
    "pct_npt",
    "s1_advantage",
    "s2_advantage",
    "containment_violations",
]


@dataclass
class RunConfig:
    """Parameters shared by the subcommands; every field has a default.

    ``samples=None`` lets each command use its own desk-scale default.
    """

    dims: list = field(default_factory=lambda: [2, 3])
    samples: int | None = None
    ensembles: list = field(default_factory=lambda: ["UE", "UP"])
    master_seed: int = 0
    workers: int = 1
    out: str | None = None
    records: str | None = None
    format: str = "jsonl"
    eps: float = DEFAULT_EPS
    power: float | None = None
    slice: SliceSamplerConfig = field(default_factory=SliceSamplerConfig)
    p_grid: list | None = None
    purities: list | None = None
    hist_bins: int = 20

    def __post_init__(self):
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ValueError(f"dims must be a non-empty list of positive integers, got {self.dims}")
        if self.samples is not None and self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.format not in ("jsonl", "csv"):
            raise ValueError(f"format must be 'jsonl' or 'csv', got {self.format!r}")
        if not self.eps > 0:
            raise ValueError("eps must be > 0")
        for kind in self.ensembles:
            EnsembleKind(kind)
        if self.hist_bins < 1:
            raise ValueError("hist_bins must be >= 1")


def sample_state(spec: EnsembleSpec, slice_cfg: SliceSamplerConfig, sample_index: int):
    """One D x D state of ``spec`` for ``sample_index``, including pure states."""
    d = spec.marginal_dim
    key = spec.key(sample_index)
    if spec.kind is EnsembleKind.PURE:
        return sample_pure_state((d, d), key)
    return sample_density_matrix(spec, (d, d), slice_cfg, key)


def _records_chunk(args):
    spec, slice_cfg, eps, start, stop = args
    d = spec.marginal_dim
    out = []
    for i in range(start, stop):
        rho = sample_state(spec, slice_cfg, i)
        rec = {"sample_index": i, "dim": d, "ensemble": spec.kind.value}
        rec.update(witness_report(rho, (d, d), eps).to_dict())
        out.append(rec)
    return out


def ensemble_records(spec: EnsembleSpec, slice_cfg=None, eps=DEFAULT_EPS, workers=1) -> list[dict]:
    """Witness records for sample indices ``0 .. spec.count - 1``, in order."""
    slice_cfg = slice_cfg or SliceSamplerConfig()
    n = spec.count
    if workers <= 1 or n < 2 * workers:
        return _records_chunk((spec, slice_cfg, eps, 0, n))
    bounds = np.linspace(0, n, 4 * workers + 1).astype(int)
    chunks = [(spec, slice_cfg, eps, a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_records_chunk, chunks))
    return [rec for part in parts for rec in part]


@dataclass
class StudySummary:
    """Aggregate of an ensemble study: one row per (dimension, ensemble)."""

    rows: list

    @property
    def containment_violations(self) -> int:
        return sum(r["containment_violations"] for r in self.rows)

    def row(self, dim: int, ensemble: str) -> dict:
        for r in self.rows:
            if r["dim"] == dim and r["ensemble"] == ensemble:
                return r
        raise KeyError((dim, ensemble))

    def csv_rows(self) -> list[dict]:
        return [{k: r[k] for k in SUMMARY_COLUMNS} for r in self.rows]


def summarize(records, hist_bins: int = 20) -> StudySummary:
    """Fold per-state records into a :class:`StudySummary`.

    Rows appear in order of first occurrence of each (dim, ensemble).
    """
    groups: dict = {}
    for rec in records:
        key = (rec["dim"], rec["ensemble"])
        g = groups.get(key)
        if g is None:
            n_joint = rec["dim"] ** 2
            g = groups[key] = {
                "dim": rec["dim"],
                "ensemble": rec["ensemble"],
                "samples": 0,
                "counts": dict.fromkeys(["s1", "s2", "sinf", "npt"], 0),
                "s1_advantage": 0,
                "s2_advantage": 0,
                "containment_violations": 0,
                "edges": np.linspace(1.0 / n_joint, 1.0, hist_bins + 1),
                "hist": np.zeros(hist_bins, dtype=int),
            }
        g["samples"] += 1
        for name in ("s1", "s2", "sinf"):
            g["counts"][name] += bool(rec[f"{name}_witness"])
        g["counts"]["npt"] += bool(rec["npt"])
        g["s1_advantage"] += rec["s1_witness"] and not rec["s2_witness"]
        g["s2_advantage"] += rec["s2_witness"] and not rec["s1_witness"]
        fired = rec["s1_witness"] or rec["s2_witness"] or rec["sinf_witness"]
        g["containment_violations"] += fired and not rec["npt"]
        idx = np.searchsorted(g["edges"], rec["joint_purity"], side="right") - 1
        g["hist"][min(max(idx, 0), hist_bins - 1)] += 1
    rows = []
    for g in groups.values():
        n = g["samples"]
        row = {"dim": g["dim"], "ensemble": g["ensemble"], "samples": n}
        for name, count in g["counts"].items():
            row[f"pct_{name}"] = 100.0 * count / n
            row[f"count_{name}"] = count
        row["s1_advantage"] = int(g["s1_advantage"])
        row["s2_advantage"] = int(g["s2_advantage"])
        row["containment_violations"] = int(g["containment_violations"])
        row["purity_hist_edges"] = g["edges"].tolist()
        row["purity_hist_counts"] = g["hist"].tolist()
        rows.append(row)
    return StudySummary(rows)


def cmd_ensemble_study(cfg: RunConfig):
    """Sample every (dimension, ensemble) pair and evaluate all witnesses.

    Returns ``(summary, records)``.
    """
    count = cfg.samples or 10_000
    records = []
    for d in cfg.dims:
        for kind in cfg.ensembles:
            spec = EnsembleSpec(kind, int(d), count, cfg.master_seed, cfg.power)
            records.extend(ensemble_records(spec, cfg.slice, cfg.eps, cfg.workers))
    return summarize(records, cfg.hist_bins), records


def cmd_werner_sweep(cfg: RunConfig) -> list[dict]:
    """Witness values of Werner states over a Bell-fraction grid, plus thresholds."""
    grid = cfg.p_grid if cfg.p_grid is not None else np.linspace(0.0, 1.0, 21).tolist()
    rows = []
    for d in cfg.dims:
        d = int(d)
        for p in grid:
            rep = witness_report(werner_state(WernerParams(d, float(p))), (d, d), cfg.eps)
            rows.append(
                {
                    "kind": "sweep",
                    "dim": d,
                    "p": float(p),
                    "joint_purity": rep.joint_purity,
                    "s1_cond_ab": rep.s1_cond_ab,
                    "s2_cond_ab": rep.s2_cond_ab,
                    "sinf_cond_ab": rep.sinf_cond_ab,
                    "log_negativity": rep.log_negativity,
                    "s1_witness": rep.s1_witness,
                    "s2_witness": rep.s2_witness,
                    "sinf_witness": rep.sinf_witness,
                    "npt": rep.npt,
                }
            )
        analytic = {"s1": None, "s2": 1.0 / math.sqrt(d + 1), "sinf": 1.0 / (d + 1)}
        for name, alpha in ORDERS.items():
            rows.append(
                {
                    "kind": "threshold",
                    "dim": d,
                    "order": name,
                    "p_c": werner_threshold(alpha, d),
                    "analytic": analytic[name],
                }
            )
        rows.append(
            {
                "kind": "threshold",
                "dim": d,
                "order": "npt",
                "p_c": werner_npt_threshold(d),
                "analytic": 1.0 / (d + 1),
            }
        )
    return rows


@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def check_nearly_pure(n: int, samples: int, seed: int) -> ClaimResult:
    draws = np.array([sample_simplex_uniform(n, StreamKey(seed, i)) for i in range(samples)])
    frac = float(np.mean(draws.max(axis=1) >= 0.5))
    target = nearly_pure_fraction(n)
    sigma = math.sqrt(target * (1 - target) / samples)
    ok = abs(frac - target) < 3 * sigma if sigma > 0 else frac == target
    return ClaimResult(
        f"nearly_pure_fraction(N={n})", ok, f"empirical {frac:.5f} vs {target:.5f} (3 sigma = {3 * sigma:.5f})"
    )


def check_nearly_mm(n: int, samples: int, seed: int) -> ClaimResult:
    draws = np.array([sample_simplex_uniform(n, StreamKey(seed, i)) for i in range(samples)])
    purity = np.sum(draws**2, axis=1)
    frac = float(np.mean(purity <= 1.0 / (n - 1)))
    target = nearly_mm_fraction(n)
    sigma = math.sqrt(target * (1 - target) / samples)
    ok = abs(frac - target) < 3 * sigma
    return ClaimResult(
        f"nearly_mm_fraction(N={n})", ok, f"empirical {frac:.5f} vs formula {target:.5f} (3 sigma = {3 * sigma:.5f})"
    )


def naive_entropy_offsets(sizes, repeats: int, seed: int) -> list[float]:
    """Mean of H(p) - log2 N over ``repeats`` naive draws for each N."""
    offsets = []
    for n in sizes:
        h = [
            renyi_entropy(sample_naive_probability_vector(n, StreamKey(seed + n, r)), 1.0)
            for r in range(repeats)
        ]
        offsets.append(float(np.mean(h) - math.log2(n)))
    return offsets


def check_naive_offset(sizes=(100, 1000, 10000), repeats: int = 200, seed: int = 0) -> ClaimResult:
    off = naive_entropy_offsets(sizes, repeats, seed)
    diffs = np.abs(np.diff(off))
    ok = bool(np.all(np.diff(diffs) < 0) and diffs[-1] < 0.05)
    detail = "offsets " + ", ".join(f"N={n}: {o:+.5f}" for n, o in zip(sizes, off))
    return ClaimResult("naive_entropy_offset", ok, detail)


def larger_marginal_eigenvalues(d: int, samples: int, seed: int) -> np.ndarray:
    out = np.empty((samples, d))
    for i in range(samples):
        rho = sample_pure_state((d, d), StreamKey(seed, i))
        out[i] = np.clip(np.linalg.eigvalsh(partial_trace(rho, (d, d), keep="A"))[::-1], 0, None)
    return out


def qubit_larger_eigenvalue_cdf(x):
    """CDF of the larger marginal eigenvalue of a Haar-random 2 x 2 pure state.

    The unordered density 3 (2l - 1)^2 on [0, 1], folded onto [1/2, 1].
    """
    x = np.clip(np.asarray(x, dtype=float), 0.5, 1.0)
    return (2 * x - 1) ** 3


def check_marginal_density(samples: int, seed: int) -> ClaimResult:
    lam = larger_marginal_eigenvalues(2, samples, seed)[:, 0]
    stat, pvalue = stats.kstest(lam, qubit_larger_eigenvalue_cdf)
    at_pure = marginal_eigenvalue_density([1.0, 0.0], 2)
    ok = pvalue > 0.01 and abs(at_pure - 3.0) < 1e-12
    return ClaimResult("marginal_density(d=2)", ok, f"KS p = {pvalue:.4f}, stat = {stat:.5f}")


def check_correlation_bound(d: int, samples: int, seed: int) -> ClaimResult:
    violations = 0
    worst = -math.inf
    for i in range(samples):
        rho = sample_pure_state((d, d), StreamKey(seed, i))
        mi = classical_mutual_information(rho, (d, d))
        spec_a = np.clip(np.linalg.eigvalsh(partial_trace(rho, (d, d), keep="A")), 0, None)
        s_a = renyi_entropy(spec_a / spec_a.sum(), 1.0)
        worst = max(worst, mi - s_a)
        violations += mi > s_a + 1e-9
    return ClaimResult(
        f"correlation_bound({d}x{d})",
        violations == 0,
        f"{violations} violations in {samples}; max H(X_A:X_B) - S(A) = {worst:.3e}",
    )


def cmd_appendix_check(cfg: RunConfig) -> list[ClaimResult]:
    """Run every Monte Carlo claim check; see :class:`ClaimResult`."""
    big = cfg.samples or 100_000
    small = cfg.samples or 10_000
    seed = cfg.master_seed
    return [
        check_nearly_pure(3, big, seed),
        check_nearly_mm(3, big, seed + 1),
        check_naive_offset(seed=seed + 2),
        check_marginal_density(big, seed + 3),
        check_correlation_bound(2, small, seed + 4),
        check_correlation_bound(3, small, seed + 5),
    ]


def cmd_bounds(cfg: RunConfig) -> list[dict]:
    """Entropy bounds at fixed purity for each joint dimension in ``cfg.dims``."""
    rows = []
    for n in cfg.dims:
        n = int(n)
        purities = cfg.purities if cfg.purities is not None else np.linspace(1.0 / n, 1.0, 11).tolist()
        for purity in purities:
            b = entropy_bounds(PurityPoint(n, float(purity)))
            rows.append(
                {
                    "dim": n,
                    "purity": float(purity),
                    "kappa": kappa_of_purity(float(purity)),
                    "s_min": b.s_min,
                    "s_max": b.s_max,
                }
            )
    return rows


def report_fields() -> list[str]:
    return ["sample_index", "dim", "ensemble", *WitnessReport.field_names()]
