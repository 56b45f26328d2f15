"""Monte Carlo engine for uniform random mappings.

Sampling is counter-based: worker w draws from a Philox stream keyed by
(seed, w), and trial t is assigned to stream t mod workers, so results are
reproducible for a fixed (seed, workers) pair regardless of scheduling.
Constrained runs (connected, exactly m components) use rejection against the
analyzed component count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "Mapping",
    "GraphSummary",
    "SimStats",
    "BudgetExhaustedError",
    "sample_mapping",
    "analyze",
    "simulate",
    "interplay_estimate",
]

_STAT_NAMES = ("lambda1", "lambda2", "lambda3", "lambda4", "n_cyclic", "components")


class BudgetExhaustedError(RuntimeError):
    """Rejection sampling hit its attempt budget before enough acceptances."""


@dataclass(frozen=True)
class Mapping:
    """A function {1..n} -> {1..n}; image[i-1] = f(i), values are 1-based."""

    n: int
    image: np.ndarray

    def __post_init__(self):
        img = np.asarray(self.image, dtype=np.int64)
        object.__setattr__(self, "image", img)
        if img.shape != (self.n,):
            raise ValueError(f"image must have length n={self.n}")
        if img.size and (img.min() < 1 or img.max() > self.n):
            raise ValueError("image entries must lie in [1, n]")


@dataclass(frozen=True)
class GraphSummary:
    """Structural digest of one mapping's functional graph."""

    n: int
    component_count: int
    cyclic_point_count: int
    cycle_lengths: tuple  # descending, one per component
    component_sizes: tuple  # descending
    largest_component_contains_longest_cycle: bool

    def lambda_r(self, r: int) -> int:
        """Length of the r-th longest cycle; 0 when fewer than r cycles."""
        return self.cycle_lengths[r - 1] if r <= len(self.cycle_lengths) else 0


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.Philox(key=[int(rng) % 2**64, 0]))


def sample_mapping(n: int, rng) -> Mapping:
    """Draw a uniform mapping; rng is a numpy Generator or an integer seed."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    gen = _as_generator(rng)
    image = gen.integers(0, n, size=n, dtype=np.int64) + 1
    return Mapping(n=n, image=image)


def analyze(mapping: Mapping) -> GraphSummary:
    """Cyclic points by in-degree peeling, components, ranked cycle lengths."""
    lengths, sizes, flag = _kernels.analyze_arrays(mapping.image - 1)
    return GraphSummary(
        n=mapping.n,
        component_count=len(lengths),
        cyclic_point_count=int(lengths.sum()),
        cycle_lengths=tuple(int(v) for v in lengths),
        component_sizes=tuple(int(v) for v in sizes),
        largest_component_contains_longest_cycle=bool(flag),
    )


def _normalize_constraint(constraint):
    if constraint in (None, "none"):
        return ("none", None)
    if constraint == "connected":
        return ("components", 1)
    if isinstance(constraint, tuple) and len(constraint) == 2 and constraint[0] == "components":
        m = int(constraint[1])
        if m < 1:
            raise ValueError("component constraint must be >= 1")
        return ("components", m)
    if isinstance(constraint, str) and constraint.startswith("components="):
        return _normalize_constraint(("components", int(constraint.split("=", 1)[1])))
    raise ValueError(f"unknown constraint {constraint!r}")


def _expected_acceptance(n: int, m: int | None) -> float:
    if m is None:
        return 1.0
    base = math.sqrt(math.pi / (2.0 * n))
    if m == 1:
        return base
    return base * math.log(n) ** (m - 1) / (2 ** (m - 1) * math.factorial(m - 1))


@dataclass
class _Partial:
    count: int = 0
    attempts: int = 0
    vec_sum: np.ndarray = field(default_factory=lambda: np.zeros(6))
    vec_sq: np.ndarray = field(default_factory=lambda: np.zeros((6, 6)))
    flag_sum: int = 0
    cdf_counts: np.ndarray | None = None

    def merge(self, other: "_Partial"):
        self.count += other.count
        self.attempts += other.attempts
        self.vec_sum += other.vec_sum
        self.vec_sq += other.vec_sq
        self.flag_sum += other.flag_sum
        if other.cdf_counts is not None:
            if self.cdf_counts is None:
                self.cdf_counts = other.cdf_counts.copy()
            else:
                self.cdf_counts += other.cdf_counts


@dataclass
class SimStats:
    """Aggregated Monte Carlo estimates.

    Cycle lengths and the cyclic-point count are scaled by sqrt(n); the
    component count is unscaled.  mean/variance/standard_error are keyed by
    lambda1..lambda4, n_cyclic, components.
    """

    n: int
    trials: int
    constraint: str
    seed: int
    workers: int
    attempts: int
    acceptance_rate: float
    mean: dict
    variance: dict
    standard_error: dict
    corr_lambda_n: dict  # r -> corr(Lambda_r, N)
    corr_lambda_pairs: dict  # (r, s) -> corr(Lambda_r, Lambda_s)
    p_largest_contains_longest: float
    p_largest_contains_longest_se: float
    lambda1_cdf: dict  # b -> empirical P{Lambda_1 <= b sqrt(n)}


def _worker_run(n, quota, seed, widx, workers, m_required, cap, cdf_grid):
    rng = np.random.Generator(np.random.Philox(key=[int(seed) % 2**64, widx]))
    part = _Partial()
    if cdf_grid is not None:
        part.cdf_counts = np.zeros(len(cdf_grid), dtype=np.int64)
    sqrt_n = math.sqrt(n)
    chunk_rows = max(1, min(quota, 4_000_000 // max(n, 1)))
    remaining = quota
    while remaining > 0:
        rows = min(chunk_rows, remaining) if m_required is None else chunk_rows
        images = rng.integers(0, n, size=(rows, n), dtype=np.int64)
        stats = _kernels.batch_stats(images)
        part.attempts += rows
        if m_required is not None:
            stats = stats[stats[:, 5] == m_required]
            if len(stats) > remaining:
                stats = stats[:remaining]
        if len(stats):
            vec = np.empty((len(stats), 6))
            vec[:, 0:4] = stats[:, 0:4] / sqrt_n
            vec[:, 4] = stats[:, 4] / sqrt_n
            vec[:, 5] = stats[:, 5]
            part.vec_sum += vec.sum(axis=0)
            part.vec_sq += vec.T @ vec
            part.flag_sum += int(stats[:, 6].sum())
            part.count += len(stats)
            if cdf_grid is not None:
                for i, b in enumerate(cdf_grid):
                    part.cdf_counts[i] += int(np.sum(vec[:, 0] <= b))
            remaining -= len(stats)
        if part.attempts > cap and remaining > 0:
            raise BudgetExhaustedError(
                f"worker {widx}: {part.attempts} attempts for {quota - remaining}/{quota} acceptances"
            )
    return part


def simulate(
    n: int,
    trials: int,
    constraint="none",
    seed: int = 0,
    workers: int | None = None,
    cdf_grid=None,
    max_attempts: int | None = None,
) -> SimStats:
    """Aggregate structural statistics over `trials` (accepted) mappings.

    ``max_attempts`` caps each worker's rejection attempts; the default is
    10^4 times the expected attempt count for the constraint.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    kind, m_required = _normalize_constraint(constraint)
    if workers is None:
        workers = int(os.environ.get("RANDMAP_WORKERS", "1"))
    workers = max(1, int(workers))
    acc = _expected_acceptance(n, m_required)
    if max_attempts is not None:
        cap_per_worker = int(max_attempts)
    else:
        cap_per_worker = int(math.ceil(10_000.0 * (trials / workers + 1) / acc))
    quotas = [len(range(w, trials, workers)) for w in range(workers)]
    grid = tuple(float(b) for b in cdf_grid) if cdf_grid is not None else None

    parts = []
    if workers == 1:
        parts.append(_worker_run(n, quotas[0], seed, 0, workers, m_required, cap_per_worker, grid))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [
                pool.submit(
                    _worker_run, n, quotas[w], seed, w, workers, m_required, cap_per_worker, grid
                )
                for w in range(workers)
                if quotas[w] > 0
            ]
            parts = [f.result() for f in futs]
    total = _Partial()
    for p in parts:
        total.merge(p)

    c = total.count
    means = total.vec_sum / c
    cov = total.vec_sq / c - np.outer(means, means)
    var_sample = (total.vec_sq.diagonal() - c * means**2) / max(c - 1, 1)
    mean_d, var_d, se_d = {}, {}, {}
    for i, name in enumerate(_STAT_NAMES):
        mean_d[name] = float(means[i])
        var_d[name] = float(var_sample[i])
        se_d[name] = float(math.sqrt(max(var_sample[i], 0.0) / c))
    sd = np.sqrt(np.clip(cov.diagonal(), 1e-300, None))
    corr_ln = {r: float(cov[r - 1, 4] / (sd[r - 1] * sd[4])) for r in (1, 2, 3, 4)}
    corr_pairs = {
        (r, s): float(cov[r - 1, s - 1] / (sd[r - 1] * sd[s - 1]))
        for r in (1, 2, 3, 4)
        for s in (1, 2, 3, 4)
        if r < s
    }
    p_flag = total.flag_sum / c
    cdf = {}
    if grid is not None:
        cdf = {b: float(k / c) for b, k in zip(grid, total.cdf_counts)}
    return SimStats(
        n=n,
        trials=trials,
        constraint=kind if m_required is None else f"components={m_required}",
        seed=seed,
        workers=workers,
        attempts=total.attempts,
        acceptance_rate=c / total.attempts,
        mean=mean_d,
        variance=var_d,
        standard_error=se_d,
        corr_lambda_n=corr_ln,
        corr_lambda_pairs=corr_pairs,
        p_largest_contains_longest=float(p_flag),
        p_largest_contains_longest_se=float(
            math.sqrt(max(p_flag * (1.0 - p_flag), 1e-300) / c)
        ),
        lambda1_cdf=cdf,
    )


def interplay_estimate(n: int, trials: int, seed: int = 0, workers: int | None = None):
    """P{largest component contains a longest cycle} with standard error.

    Ties on component size go to the component with the longer cycle, then
    the lower minimum label; a tie on cycle length counts as success when any
    longest cycle lies in the selected component.
    """
    stats = simulate(n, trials, constraint="none", seed=seed, workers=workers)
    return stats.p_largest_contains_longest, stats.p_largest_contains_longest_se
