"""Shared oracles and builders used across the test modules.

The oracles deliberately avoid the library's own evaluation routes: the
region integral is brute-forced with nested Gauss-Legendre panels, and the
posterior mean is estimated from raw gamma draws.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

from stress_strength import CensoredSample, StressStrengthData


def sample_with_totals(observed: int, total_time: float) -> CensoredSample:
    """A complete sample of ``observed`` equal times whose total time on
    test is ``total_time`` up to float rounding; read ``.ttt`` back for the
    realized value."""
    times = (total_time / observed,) * observed
    return CensoredSample.from_times(times, observed)


def data_with_totals(r1: int, r2: int, z_total: float, v_total: float) -> StressStrengthData:
    return StressStrengthData(
        strength=sample_with_totals(r1, z_total),
        stress=sample_with_totals(r2, v_total),
    )


def spacing_density(t: np.ndarray, observed: int, total: float) -> np.ndarray:
    """Conditional density of one normalized spacing given the sample's
    total time on test; supported on (0, total)."""
    return (observed - 1) / total * (1.0 - t / total) ** (observed - 2)


def umvue_region_oracle(
    r1: int, r2: int, z_total: float, v_total: float, panels: int = 160
) -> float:
    """Brute-force the two-dimensional region integral behind the UMVUE.

    Integrates the product of the two conditional spacing densities over
    the region {v < z} by iterated Gauss-Legendre: an outer rule in v on
    (0, min(Z, V)) and, for each outer node, an inner rule in z on (v, Z).
    Needs r1, r2 >= 2 so both densities exist.
    """
    nodes, weights = leggauss(panels)
    outer_upper = min(z_total, v_total)
    v = 0.5 * outer_upper * (nodes + 1.0)
    wv = 0.5 * outer_upper * weights
    total = 0.0
    for v_i, wv_i in zip(v, wv):
        z = 0.5 * (z_total - v_i) * (nodes + 1.0) + v_i
        wz = 0.5 * (z_total - v_i) * weights
        inner = float(np.sum(wz * spacing_density(z, r1, z_total)))
        total += wv_i * float(spacing_density(np.array([v_i]), r2, v_total)[0]) * inner
    return total


def posterior_mean_mc_oracle(
    a1: float,
    zeta: float,
    a2: float,
    tau: float,
    draws: int,
    seed: int,
    chunk: int = 1_000_000,
) -> tuple[float, float]:
    """Monte Carlo posterior mean of R = zeta*G2 / (zeta*G2 + tau*G1) with
    G1 ~ Gamma(a1), G2 ~ Gamma(a2); returns (mean, standard error)."""
    rng = np.random.default_rng(seed)
    remaining = draws
    total = 0.0
    total_sq = 0.0
    while remaining > 0:
        size = min(chunk, remaining)
        g1 = rng.gamma(a1, size=size)
        g2 = rng.gamma(a2, size=size)
        ratio = zeta * g2 / (zeta * g2 + tau * g1)
        total += float(np.sum(ratio))
        total_sq += float(np.sum(ratio * ratio))
        remaining -= size
    mean = total / draws
    variance = max(0.0, total_sq / draws - mean * mean)
    return mean, (variance / draws) ** 0.5
