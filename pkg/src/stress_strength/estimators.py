"""Point estimators of the reliability R = P(Y < X).

Strength X and stress Y are independent exponentials with means ``alpha``
and ``beta``, each observed under type-II censoring, so R = alpha /
(alpha + beta).  Four estimators are provided:

* ``r1_mle`` -- plug the censored-sample MLEs of the scales into R.
* ``r2_umvue`` -- Rao-Blackwellize the unbiased indicator ``1{v1 < z1}``
  built from the first normalized spacings onto the total time on test of
  each sample.  Exactly unbiased.
* ``r3_bayes_conjugate`` -- posterior mean of R under independent conjugate
  priors on the scales (inverse-scale gamma family).
* ``r4_bayes_noninf`` -- the same posterior mean under the flat 1/scale
  prior, i.e. the conjugate answer with both hyperparameters zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampling import CensoredSample, ExponentialScales, StressStrengthData
from .specfun import QuadratureSpec, integrate_1d, ln_gamma

__all__ = [
    "GammaPrior",
    "NONINFORMATIVE",
    "PosteriorParams",
    "EstimateSet",
    "true_reliability",
    "mle_scale",
    "mle_reliability",
    "umvue_reliability",
    "posterior_params",
    "bayes_reliability",
    "bayes_noninf_reliability",
    "estimate_all",
]


@dataclass(frozen=True)
class GammaPrior:
    """Prior on an exponential scale: density proportional to
    ``(1/scale)**(shape_u + 1) * exp(-scale_v / scale)``.

    ``GammaPrior(0, 0)`` is the noninformative 1/scale prior.
    """

    shape_u: float
    scale_v: float

    def __post_init__(self) -> None:
        for name in ("shape_u", "scale_v"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and nonnegative, got {value}")


NONINFORMATIVE = GammaPrior(0.0, 0.0)


@dataclass(frozen=True)
class PosteriorParams:
    """Inverse-scale gamma posterior: density proportional to
    ``(1/scale)**(shape + 1) * exp(-scale_total / scale)``."""

    shape: float
    scale_total: float

    def __post_init__(self) -> None:
        for name in ("shape", "scale_total"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class EstimateSet:
    """The four point estimates for one dataset."""

    r1_mle: float
    r2_umvue: float
    r3_bayes_conjugate: float
    r4_bayes_noninf: float

    def __post_init__(self) -> None:
        for name in ("r1_mle", "r3_bayes_conjugate", "r4_bayes_noninf"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie strictly inside (0, 1), got {value}")
        if not 0.0 <= self.r2_umvue <= 1.0:
            raise ValueError(f"r2_umvue must lie in [0, 1], got {self.r2_umvue}")


def true_reliability(params: ExponentialScales) -> float:
    """P(Y < X) for independent exponentials with the given means."""
    return params.alpha / (params.alpha + params.beta)


def mle_scale(sample: CensoredSample) -> float:
    """Maximum-likelihood estimate of the scale: total time on test over
    the number of observed failures."""
    return sample.ttt / sample.observed


def mle_reliability(data: StressStrengthData) -> float:
    alpha_hat = mle_scale(data.strength)
    beta_hat = mle_scale(data.stress)
    return alpha_hat / (alpha_hat + beta_hat)


def _first_spacing_cdf(t: float, observed: int, total: float) -> float:
    # P(first normalized spacing < t | total time on test), which is
    # 1 - (1 - t/total)**(observed - 1) on [0, total] and 1 beyond.
    if t >= total:
        return 1.0
    return -math.expm1((observed - 1) * math.log1p(-t / total))


def umvue_reliability(data: StressStrengthData, quad: QuadratureSpec | None = None) -> float:
    """Uniformly minimum variance unbiased estimate of P(Y < X).

    Conditions the unbiased indicator ``1{v1 < z1}`` (first normalized
    spacings of the two samples, each exponential with its sample's scale)
    on the pair of total times on test.  Given the totals, a single spacing
    has density ``(r-1) * (1 - t/total)**(r-2) / total`` on (0, total), so
    the estimate is a one-dimensional integral, computed here over
    ``[0, min(Z, V)]`` with the analytic remainder ``(1 - V/Z)**(r1-1)``
    added when the stress total V falls below the strength total Z.
    """
    r1 = data.strength.observed
    r2 = data.stress.observed
    z_total = data.strength.ttt
    v_total = data.stress.ttt

    if r1 == 1 and r2 == 1:
        # Both spacings equal their totals; the indicator itself remains.
        return 1.0 if v_total < z_total else 0.0
    if r1 == 1:
        return _first_spacing_cdf(z_total, r2, v_total)
    if r2 == 1:
        # The stress spacing equals its total, so only the strength tail
        # beyond v_total contributes.
        if v_total >= z_total:
            return 0.0
        return math.exp((r1 - 1) * math.log1p(-v_total / z_total))

    upper = min(z_total, v_total)
    g_coeff = (r1 - 1.0) / z_total

    def integrand(t: np.ndarray) -> np.ndarray:
        g = g_coeff * (1.0 - t / z_total) ** (r1 - 2)
        h = -np.expm1((r2 - 1) * np.log1p(-t / v_total))
        return g * h

    value = integrate_1d(integrand, 0.0, upper, quad)
    if v_total < z_total:
        value += math.exp((r1 - 1) * math.log1p(-v_total / z_total))
    return min(1.0, max(0.0, value))


def posterior_params(prior: GammaPrior, sample: CensoredSample) -> PosteriorParams:
    """Conjugate update: shape gains the observed count, scale total gains
    the total time on test."""
    return PosteriorParams(
        shape=prior.shape_u + sample.observed,
        scale_total=prior.scale_v + sample.ttt,
    )


def _posterior_mean_reliability(
    strength_post: PosteriorParams,
    stress_post: PosteriorParams,
    quad: QuadratureSpec | None,
) -> float:
    # With alpha = zeta/G1 and beta = tau/G2 for independent standard gammas
    # G1 ~ Gamma(a1), G2 ~ Gamma(a2), the ratio R = alpha/(alpha+beta)
    # depends on (G1, G2) only through b = G1/(G1+G2) ~ Beta(a1, a2), so the
    # posterior mean is a single Beta-weighted integral over (0, 1).
    a1, zeta = strength_post.shape, strength_post.scale_total
    a2, tau = stress_post.shape, stress_post.scale_total
    ln_beta_norm = ln_gamma(a1) + ln_gamma(a2) - ln_gamma(a1 + a2)

    def integrand(b: np.ndarray) -> np.ndarray:
        num = zeta * (1.0 - b)
        ratio = num / (num + tau * b)
        ln_density = (a1 - 1.0) * np.log(b) + (a2 - 1.0) * np.log1p(-b) - ln_beta_norm
        return ratio * np.exp(ln_density)

    value = integrate_1d(integrand, 0.0, 1.0, quad)
    return min(1.0, max(0.0, value))


def bayes_reliability(
    data: StressStrengthData,
    prior_strength: GammaPrior,
    prior_stress: GammaPrior,
    quad: QuadratureSpec | None = None,
) -> float:
    """Posterior mean of P(Y < X) under independent conjugate priors."""
    return _posterior_mean_reliability(
        posterior_params(prior_strength, data.strength),
        posterior_params(prior_stress, data.stress),
        quad,
    )


def bayes_noninf_reliability(data: StressStrengthData, quad: QuadratureSpec | None = None) -> float:
    """Posterior mean of P(Y < X) under the noninformative 1/scale priors."""
    return bayes_reliability(data, NONINFORMATIVE, NONINFORMATIVE, quad)


def estimate_all(
    data: StressStrengthData,
    prior_strength: GammaPrior = NONINFORMATIVE,
    prior_stress: GammaPrior = NONINFORMATIVE,
    quad: QuadratureSpec | None = None,
) -> EstimateSet:
    """Evaluate all four estimators on one dataset."""
    r4 = bayes_noninf_reliability(data, quad)
    if prior_strength == NONINFORMATIVE and prior_stress == NONINFORMATIVE:
        r3 = r4
    else:
        r3 = bayes_reliability(data, prior_strength, prior_stress, quad)
    return EstimateSet(
        r1_mle=mle_reliability(data),
        r2_umvue=umvue_reliability(data, quad),
        r3_bayes_conjugate=r3,
        r4_bayes_noninf=r4,
    )
