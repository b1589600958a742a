"""Special functions and adaptive quadrature used by the estimators.

Everything here is self-contained and deterministic: quantiles are obtained
by bracketed bisection on CDFs built from the regularized incomplete beta
and gamma functions, and the integrator is an adaptive Gauss-Kronrod rule
whose nodes never touch the endpoints of the interval.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "NonConvergenceError",
    "QuadratureSpec",
    "DEFAULT_QUADRATURE",
    "ln_gamma",
    "reg_incomplete_beta",
    "reg_lower_gamma",
    "normal_cdf",
    "normal_quantile",
    "f_cdf",
    "f_quantile",
    "chisq_cdf",
    "chisq_quantile",
    "integrate_1d",
]

_CF_MAX_ITER = 500
_CF_TINY = 1e-300


class NonConvergenceError(RuntimeError):
    """An iterative routine failed to reach its tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy controls for :func:`integrate_1d`.

    Parameters
    ----------
    abs_tolerance : float
        Target bound on the estimated absolute error of the integral.
    max_subdivisions : int
        Interval splits allowed before giving up.
    """

    abs_tolerance: float = 1e-10
    max_subdivisions: int = 1_000_000

    def __post_init__(self) -> None:
        if not (math.isfinite(self.abs_tolerance) and self.abs_tolerance > 0.0):
            raise ValueError(f"abs_tolerance must be positive, got {self.abs_tolerance}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


DEFAULT_QUADRATURE = QuadratureSpec()


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    # Modified Lentz evaluation of the standard continued fraction for the
    # incomplete beta; converges fast when x < (a + 1) / (a + b + 2).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise NonConvergenceError(f"incomplete beta continued fraction stalled at a={a}, b={b}, x={x}")


def reg_incomplete_beta(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not (math.isfinite(a) and a > 0.0 and math.isfinite(b) and b > 0.0):
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        a * math.log(x)
        + b * math.log1p(-x)
        + ln_gamma(a + b)
        - ln_gamma(a)
        - ln_gamma(b)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def reg_lower_gamma(a: float, x: float) -> float:
    """Regularized lower incomplete gamma function P(a, x)."""
    if not (math.isfinite(a) and a > 0.0):
        raise ValueError(f"shape must be positive, got {a}")
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError(f"x must be finite and nonnegative, got {x}")
    if x == 0.0:
        return 0.0
    ln_front = a * math.log(x) - x - ln_gamma(a)
    if x < a + 1.0:
        # Power series around 0.
        term = 1.0 / a
        total = term
        denom = a
        for _ in range(_CF_MAX_ITER):
            denom += 1.0
            term *= x / denom
            total += term
            if abs(term) < abs(total) * 1e-17:
                return total * math.exp(ln_front)
        raise NonConvergenceError(f"incomplete gamma series stalled at a={a}, x={x}")
    # Continued fraction for the upper tail, again by modified Lentz.
    b = x + 1.0 - a
    c = 1.0 / _CF_TINY
    d = 1.0 / b
    h = d
    for i in range(1, _CF_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = b + an / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return 1.0 - h * math.exp(ln_front)
    raise NonConvergenceError(f"incomplete gamma continued fraction stalled at a={a}, x={x}")


def normal_cdf(z: float) -> float:
    """Standard normal CDF."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _bisect_monotone(cdf: Callable[[float], float], p: float, lo: float, hi: float) -> float:
    # Bisection on a nondecreasing cdf with cdf(lo) <= p <= cdf(hi); iterates
    # until the bracket collapses to adjacent floats, so the answer is as
    # accurate as the cdf itself.
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        if cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=8192)
def normal_quantile(p: float) -> float:
    """Standard normal quantile, found by bisection on :func:`normal_cdf`."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return _bisect_monotone(normal_cdf, p, -40.0, 40.0)


def chisq_cdf(x: float, df: float) -> float:
    """Chi-square CDF with df degrees of freedom."""
    if not (math.isfinite(df) and df > 0.0):
        raise ValueError(f"df must be positive, got {df}")
    if x <= 0.0:
        return 0.0
    return reg_lower_gamma(0.5 * df, 0.5 * x)


@lru_cache(maxsize=8192)
def chisq_quantile(p: float, df: float) -> float:
    """Chi-square quantile, found by bisection on :func:`chisq_cdf`."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not (math.isfinite(df) and df > 0.0):
        raise ValueError(f"df must be positive, got {df}")
    lo, hi = _expand_bracket(lambda q: chisq_cdf(q, df), p, start=df)
    return _bisect_monotone(lambda q: chisq_cdf(q, df), p, lo, hi)


def f_cdf(x: float, d1: float, d2: float) -> float:
    """F distribution CDF with (d1, d2) degrees of freedom."""
    if not (math.isfinite(d1) and d1 > 0.0 and math.isfinite(d2) and d2 > 0.0):
        raise ValueError(f"degrees of freedom must be positive, got d1={d1}, d2={d2}")
    if x <= 0.0:
        return 0.0
    y = d1 * x / (d1 * x + d2)
    return reg_incomplete_beta(0.5 * d1, 0.5 * d2, y)


@lru_cache(maxsize=8192)
def f_quantile(p: float, d1: float, d2: float) -> float:
    """Lower-tail F quantile, found by bisection on :func:`f_cdf`."""
    if not (0.0 < p < 1.0):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not (math.isfinite(d1) and d1 > 0.0 and math.isfinite(d2) and d2 > 0.0):
        raise ValueError(f"degrees of freedom must be positive, got d1={d1}, d2={d2}")
    lo, hi = _expand_bracket(lambda q: f_cdf(q, d1, d2), p, start=1.0)
    return _bisect_monotone(lambda q: f_cdf(q, d1, d2), p, lo, hi)


def _expand_bracket(
    cdf: Callable[[float], float], p: float, start: float
) -> tuple[float, float]:
    # Multiplicative search outward from a positive starting point.
    lo = hi = start
    for _ in range(2100):
        if cdf(lo) <= p:
            break
        lo *= 0.5
    else:
        raise NonConvergenceError(f"failed to bracket quantile below, p={p}")
    for _ in range(2100):
        if cdf(hi) >= p:
            break
        hi *= 2.0
    else:
        raise NonConvergenceError(f"failed to bracket quantile above, p={p}")
    return lo, hi


# 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
# Nodes are strictly interior, so integrands are never evaluated at the
# endpoints.  Gauss points sit at the odd indices of the Kronrod array.
_GK_NODES = np.array(
    [
        -0.991455371120812639206854697526329,
        -0.949107912342758524526189684047851,
        -0.864864423359769072789712788640926,
        -0.741531185599394439863864773280788,
        -0.586087235467691130294144838258730,
        -0.405845151377397166906606412076961,
        -0.207784955007898467600689403773245,
        0.0,
        0.207784955007898467600689403773245,
        0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,
        0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,
        0.949107912342758524526189684047851,
        0.991455371120812639206854697526329,
    ]
)
_GK_WEIGHTS = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
        0.204432940075298892414161999234649,
        0.190350578064785409913256402421014,
        0.169004726639267902826583426598550,
        0.140653259715525918745189590510238,
        0.104790010322250183839876322541518,
        0.063092092629978553290700663189204,
        0.022935322010529224963732008058970,
    ]
)
_GAUSS_WEIGHTS = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    ]
)


def _gauss_kronrod_15(
    f: Callable[[np.ndarray], np.ndarray], a: float, b: float
) -> tuple[float, float]:
    center = 0.5 * (a + b)
    halfwidth = 0.5 * (b - a)
    x = center + halfwidth * _GK_NODES
    if not (a < x[0] and x[-1] < b):
        # Rounding pushed an extreme abscissa onto an endpoint of a very
        # narrow interval; nudge the nodes back inside to keep the rule open.
        x = np.clip(x, np.nextafter(a, b), np.nextafter(b, a))
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        raise ValueError("integrand must map a 1-d array to an array of the same shape")
    if not np.all(np.isfinite(y)):
        raise ValueError(f"integrand returned a non-finite value on [{a}, {b}]")
    kronrod = halfwidth * float(_GK_WEIGHTS @ y)
    gauss = halfwidth * float(_GAUSS_WEIGHTS @ y[1::2])
    # |K15 - G7| is a pessimistic proxy for the error of the K15 value.
    return kronrod, abs(kronrod - gauss)


def integrate_1d(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Integrate a vectorized function over [lo, hi].

    The integrand is called with a 1-d array of abscissae strictly inside
    the interval and must return the matching array of values.  Subintervals
    are bisected worst-first until the summed error estimate drops below
    ``spec.abs_tolerance``.

    Raises
    ------
    NonConvergenceError
        If the tolerance is still unmet after ``spec.max_subdivisions``
        splits, or an interval becomes too narrow to bisect.
    """
    if spec is None:
        spec = DEFAULT_QUADRATURE
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"integration limits must be finite, got [{lo}, {hi}]")
    if lo > hi:
        raise ValueError(f"lower limit exceeds upper limit: [{lo}, {hi}]")
    if lo == hi:
        return 0.0

    value, error = _gauss_kronrod_15(f, lo, hi)
    # Heap of (-error, tiebreak, a, b, value, error); the tiebreak counter
    # keeps ordering deterministic when error estimates coincide.
    counter = 0
    intervals = [(-error, counter, lo, hi, value, error)]
    total_value = value
    total_error = error
    splits = 0
    while total_error > spec.abs_tolerance:
        if splits >= spec.max_subdivisions:
            raise NonConvergenceError(
                f"quadrature error {total_error:.3e} above tolerance "
                f"{spec.abs_tolerance:.3e} after {splits} subdivisions"
            )
        _, _, a, b, val, err = heapq.heappop(intervals)
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            raise NonConvergenceError(
                f"interval [{a}, {b}] cannot be bisected further; "
                f"estimated error {total_error:.3e}"
            )
        left_val, left_err = _gauss_kronrod_15(f, a, mid)
        right_val, right_err = _gauss_kronrod_15(f, mid, b)
        total_value += left_val + right_val - val
        total_error += left_err + right_err - err
        counter += 1
        heapq.heappush(intervals, (-left_err, counter, a, mid, left_val, left_err))
        counter += 1
        heapq.heappush(intervals, (-right_err, counter, mid, b, right_val, right_err))
        splits += 1
    return total_value
