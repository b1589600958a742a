"""Monte Carlo comparison of the estimators and interval procedures.

Each simulation cell fixes the true scales, the sample sizes, and the
censoring counts, then replays ``replicates`` independent datasets.
Replicate ``i`` of a cell seeded with ``seed`` always draws from the stream
``(seed, i)``, so cells are reproducible in isolation, in any order, and
across worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .estimators import (
    NONINFORMATIVE,
    EstimateSet,
    GammaPrior,
    estimate_all,
    true_reliability,
)
from .intervals import METHODS, asymptotic_ci, exact_ci
from .sampling import ExponentialScales, RngStream, draw_dataset

__all__ = [
    "SimulationError",
    "SimCellConfig",
    "SimCellResult",
    "CoverageResult",
    "CellFailure",
    "run_cell",
    "run_coverage",
    "run_grid",
]

FourFloats = tuple[float, float, float, float]


class SimulationError(RuntimeError):
    """A simulation cell could not be completed."""


@dataclass(frozen=True)
class SimCellConfig:
    """One cell of the comparison grid."""

    params: ExponentialScales
    n: int
    m: int
    r1: int
    r2: int
    replicates: int = 2999
    seed: int = 0
    prior_strength: GammaPrior = NONINFORMATIVE
    prior_stress: GammaPrior = NONINFORMATIVE
    level: float = 0.95

    def __post_init__(self) -> None:
        if not 1 <= self.r1 <= self.n:
            raise ValueError(f"r1 must lie in [1, n={self.n}], got {self.r1}")
        if not 1 <= self.r2 <= self.m:
            raise ValueError(f"r2 must lie in [1, m={self.m}], got {self.r2}")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")


@dataclass(frozen=True)
class SimCellResult:
    config: SimCellConfig
    true_r: float
    mean_estimates: EstimateSet
    mse: FourFloats
    bias: FourFloats
    mc_stderr: FourFloats


@dataclass(frozen=True)
class CoverageResult:
    config: SimCellConfig
    method: str
    coverage: float
    mean_width: float


@dataclass(frozen=True)
class CellFailure:
    config: SimCellConfig
    message: str


class _RunningMoments:
    """Single-pass mean and variance (Welford), stable for long runs of
    near-identical squared errors."""

    __slots__ = ("count", "mean", "_m2")

    def __init__(self) -> None:
        self.count = 0
        self.mean = 0.0
        self._m2 = 0.0

    def add(self, x: float) -> None:
        self.count += 1
        delta = x - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (x - self.mean)

    def variance(self, ddof: int = 0) -> float:
        if self.count <= ddof:
            return 0.0
        return self._m2 / (self.count - ddof)


def _replicate_estimates(config: SimCellConfig, index: int) -> EstimateSet:
    data = draw_dataset(
        config.params, config.n, config.m, config.r1, config.r2,
        RngStream(config.seed, index),
    )
    return estimate_all(data, config.prior_strength, config.prior_stress)


def run_cell(config: SimCellConfig) -> SimCellResult:
    """Estimate MSE, bias, and their Monte Carlo noise for one cell.

    ``mc_stderr`` is the standard error of each MSE estimate: the sample
    standard deviation of the squared errors divided by sqrt(replicates).
    """
    true_r = true_reliability(config.params)
    estimate_moments = [_RunningMoments() for _ in range(4)]
    squared_error_moments = [_RunningMoments() for _ in range(4)]
    for i in range(config.replicates):
        try:
            estimates = _replicate_estimates(config, i)
        except Exception as exc:
            raise SimulationError(f"replicate {i} failed: {exc}") from exc
        values = (
            estimates.r1_mle,
            estimates.r2_umvue,
            estimates.r3_bayes_conjugate,
            estimates.r4_bayes_noninf,
        )
        for k, value in enumerate(values):
            estimate_moments[k].add(value)
            squared_error_moments[k].add((value - true_r) ** 2)
    means = [acc.mean for acc in estimate_moments]
    return SimCellResult(
        config=config,
        true_r=true_r,
        mean_estimates=EstimateSet(*means),
        mse=tuple(acc.mean for acc in squared_error_moments),
        bias=tuple(mean - true_r for mean in means),
        mc_stderr=tuple(
            math.sqrt(acc.variance(ddof=1) / acc.count) for acc in squared_error_moments
        ),
    )


def run_coverage(config: SimCellConfig, method: str) -> CoverageResult:
    """Empirical coverage and mean width of one interval method."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    interval_of = asymptotic_ci if method == "asymptotic" else exact_ci
    true_r = true_reliability(config.params)
    hits = 0
    width_total = 0.0
    for i in range(config.replicates):
        data = draw_dataset(
            config.params, config.n, config.m, config.r1, config.r2,
            RngStream(config.seed, i),
        )
        try:
            interval = interval_of(data, config.level)
        except Exception as exc:
            raise SimulationError(f"replicate {i} failed: {exc}") from exc
        if interval.lower <= true_r <= interval.upper:
            hits += 1
        width_total += interval.upper - interval.lower
    return CoverageResult(
        config=config,
        method=method,
        coverage=hits / config.replicates,
        mean_width=width_total / config.replicates,
    )


def _grid_entry(config: SimCellConfig) -> SimCellResult | CellFailure:
    try:
        return run_cell(config)
    except Exception as exc:
        return CellFailure(config=config, message=str(exc))


def run_grid(
    configs: list[SimCellConfig], workers: int = 1
) -> list[SimCellResult | CellFailure]:
    """Run every cell, keeping input order in the output.

    Cells are independent, so ``workers > 1`` fans them out over processes;
    per-cell seeding makes the results identical either way.  A failing
    cell yields a :class:`CellFailure` entry instead of aborting the rest.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    configs = list(configs)
    if workers == 1 or len(configs) <= 1:
        return [_grid_entry(config) for config in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_grid_entry, configs))
