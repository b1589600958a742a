"""Seeded generation of type-II censored exponential samples.

A :class:`RngStream` names a reproducible random stream by ``(seed,
stream_id)``.  Derived sub-streams let independent replicates (and the two
samples inside one replicate) consume disjoint randomness, so simulation
cells can run in any order or in parallel without changing their output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "RngStream",
    "ExponentialScales",
    "CensoredSample",
    "StressStrengthData",
    "draw_exponential_sample",
    "apply_type2_censoring",
    "draw_dataset",
]

_UINT64_BOUND = 1 << 64
_MASK64 = _UINT64_BOUND - 1


def _mix64(a: int, b: int) -> int:
    # splitmix64 finalizer over the packed pair; distinct (a, b) collide with
    # probability ~2**-64, which keeps derived stream ids disjoint in practice.
    z = (a * 0x9E3779B97F4A7C15 + b + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


@dataclass(frozen=True)
class RngStream:
    """A named pseudo-random stream; (seed, stream_id) determine every draw."""

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if not (isinstance(value, int) and 0 <= value < _UINT64_BOUND):
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {value!r}")

    def substream(self, index: int) -> "RngStream":
        """Derive the index-th child stream, disjoint from its siblings."""
        if not (isinstance(index, int) and 0 <= index < _UINT64_BOUND):
            raise ValueError(f"index must be an unsigned 64-bit integer, got {index!r}")
        return RngStream(self.seed, _mix64(self.stream_id, index))

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence((self.seed, self.stream_id)))


@dataclass(frozen=True)
class ExponentialScales:
    """Mean strength ``alpha`` and mean stress ``beta``."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite scale, got {value}")


def _total_time_on_test(ordered_times: Sequence[float], total_units: int) -> float:
    return math.fsum(ordered_times) + (total_units - len(ordered_times)) * ordered_times[-1]


@dataclass(frozen=True)
class CensoredSample:
    """The first ``observed`` order statistics out of ``total_units`` units.

    ``ttt`` is the total time on test: the sum of the observed failure times
    plus the censoring time contributed by every unit still running.
    """

    ordered_times: tuple[float, ...]
    total_units: int
    observed: int
    ttt: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "ordered_times", tuple(float(t) for t in self.ordered_times))
        times = self.ordered_times
        if self.observed != len(times) or self.observed < 1:
            raise ValueError(
                f"observed must equal the number of recorded times (>= 1), "
                f"got observed={self.observed} with {len(times)} times"
            )
        if self.total_units < self.observed:
            raise ValueError(
                f"total_units must be >= observed, got {self.total_units} < {self.observed}"
            )
        for t in times:
            if not (math.isfinite(t) and t > 0.0):
                raise ValueError(f"failure times must be positive and finite, got {t}")
        for earlier, later in zip(times, times[1:]):
            if later < earlier:
                raise ValueError("failure times must be nondecreasing")
        recomputed = _total_time_on_test(times, self.total_units)
        if not abs(self.ttt - recomputed) <= 1e-9 * max(1.0, abs(recomputed)):
            raise ValueError(f"ttt={self.ttt} is inconsistent with the times (expected {recomputed})")

    @classmethod
    def from_times(cls, times: Sequence[float], total_units: int) -> "CensoredSample":
        """Build a sample from observed failure times, sorting if needed."""
        ordered = tuple(sorted(float(t) for t in times))
        if not ordered:
            raise ValueError("at least one observed failure time is required")
        return cls(
            ordered_times=ordered,
            total_units=total_units,
            observed=len(ordered),
            ttt=_total_time_on_test(ordered, total_units),
        )


@dataclass(frozen=True)
class StressStrengthData:
    """One strength sample and one stress sample, drawn independently."""

    strength: CensoredSample
    stress: CensoredSample


def draw_exponential_sample(scale: float, count: int, rng: RngStream) -> np.ndarray:
    """Draw ``count`` exponential variates by inverse CDF.

    The inverse-CDF map ``x = -scale * log(1 - u)`` keeps the draws an
    exact scale family: multiplying ``scale`` by c multiplies each draw by c
    (up to one rounding), which the tests rely on.
    """
    if not (math.isfinite(scale) and scale > 0.0):
        raise ValueError(f"scale must be positive and finite, got {scale}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    u = rng.generator().random(count)
    return scale * -np.log1p(-u)


def apply_type2_censoring(raw_times: Sequence[float] | np.ndarray, observed: int) -> CensoredSample:
    """Keep the first ``observed`` order statistics of a complete sample."""
    total_units = len(raw_times)
    if not 1 <= observed <= total_units:
        raise ValueError(
            f"observed must lie in [1, {total_units}], got {observed}"
        )
    ordered = sorted(float(t) for t in raw_times)[:observed]
    return CensoredSample(
        ordered_times=tuple(ordered),
        total_units=total_units,
        observed=observed,
        ttt=_total_time_on_test(ordered, total_units),
    )


def draw_dataset(
    params: ExponentialScales,
    n: int,
    m: int,
    r1: int,
    r2: int,
    rng: RngStream,
) -> StressStrengthData:
    """Draw one censored stress-strength dataset.

    ``n`` strength units with the first ``r1`` failures observed, ``m``
    stress units with the first ``r2`` observed.  The two samples consume
    disjoint sub-streams of ``rng``, so they are independent and each is
    reproducible on its own.
    """
    if not 1 <= r1 <= n:
        raise ValueError(f"r1 must lie in [1, {n}], got {r1}")
    if not 1 <= r2 <= m:
        raise ValueError(f"r2 must lie in [1, {m}], got {r2}")
    strength_raw = draw_exponential_sample(params.alpha, n, rng.substream(0))
    stress_raw = draw_exponential_sample(params.beta, m, rng.substream(1))
    return StressStrengthData(
        strength=apply_type2_censoring(strength_raw, r1),
        stress=apply_type2_censoring(stress_raw, r2),
    )
