"""Kelly betting analytics for two-outcome games.

Covers the fixed-advantage closed forms for the exponential growth rate,
a numeric optimality verification of the 2p-1 fraction, the first-order
correction when the per-round advantage is itself noisy, and the long-run
hand-count estimator.  Natural logarithms throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadRangeError, ConvergenceError

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class GrowthStats:
    """Mean and variance of the per-round exponential growth rate G_1."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < 0:
            raise BadRangeError(f"negative variance {self.variance}")

    def std(self, n: int = 1) -> float:
        """Std of G_n; variance scales as 1/n for independent rounds."""
        return math.sqrt(self.variance / n)

    def mean_over(self, n: int) -> float:
        # E(G_n) = E(G_1) for independent identically played rounds.
        return self.mean


@dataclass(frozen=True)
class FuzzyAdvantage:
    """Noisy per-round win probability: mean p0 and variance var_p0."""

    p0: float
    var_p0: float

    def __post_init__(self):
        if not 0 < self.p0 < 1:
            raise BadRangeError(f"need 0 < p0 < 1, got {self.p0}")
        if self.var_p0 < 0:
            raise BadRangeError(f"need var_p0 >= 0, got {self.var_p0}")
        if self.var_p0 > self.p0 * (1 - self.p0):
            raise BadRangeError(
                f"var_p0 {self.var_p0} exceeds the probability bound "
                f"p0(1-p0) = {self.p0 * (1 - self.p0)}"
            )


def advantage_variance(eps: float, sigma_bet: float) -> float:
    """Var(p0(x)) for edge eps and a true-count std of sigma_bet edge units."""
    return (eps * sigma_bet) ** 2


def kelly_fraction(p: float) -> float:
    """Optimal bet fraction for win probability p: max(0, 2p - 1)."""
    if not 0 <= p <= 1:
        raise BadRangeError(f"need 0 <= p <= 1, got {p}")
    return max(0.0, 2 * p - 1)


def growth_stats_binomial(p: float) -> GrowthStats:
    """Growth mean/variance for a fixed-advantage game bet at the Kelly fraction."""
    if not 0.5 < p < 1:
        raise BadRangeError(f"need 1/2 < p < 1, got {p}")
    mean = p * math.log(2 * p) + (1 - p) * math.log(2 - 2 * p)
    variance = p * (1 - p) * math.log(p / (1 - p)) ** 2
    return GrowthStats(mean, variance)


def log_growth(p0: float, f: float) -> float:
    """Expected log growth when betting fraction f at expected advantage p0."""
    return p0 * math.log1p(f) + (1 - p0) * math.log1p(-f)


def _golden_max(fn, lo: float, hi: float, tol: float, max_iter: int = 500) -> float:
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a < tol:
            return (a + b) / 2
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fn(d)
    raise ConvergenceError(f"golden-section search did not reach tol={tol}")


@dataclass(frozen=True)
class OptimalityReport:
    p0: float
    argmax: float
    expected: float
    tolerance: float
    concave_at_max: bool

    @property
    def gap(self) -> float:
        return abs(self.argmax - self.expected)

    @property
    def passed(self) -> bool:
        return self.gap < self.tolerance and self.concave_at_max


def verify_kelly_optimality(p0: float, tolerance: float = 1e-6) -> OptimalityReport:
    """Numerically maximize the growth functional and compare against 2p0-1."""
    if not 0.5 < p0 < 1:
        raise BadRangeError(f"need 1/2 < p0 < 1, got {p0}")
    fn = lambda f: log_growth(p0, f)
    argmax = _golden_max(fn, 0.0, 1.0 - 1e-9, tol=tolerance / 100)
    h = 1e-4
    second_diff = fn(argmax - h) - 2 * fn(argmax) + fn(argmax + h)
    return OptimalityReport(
        p0=p0,
        argmax=argmax,
        expected=2 * p0 - 1,
        tolerance=tolerance,
        concave_at_max=second_diff < 0,
    )


def growth_var_fuzzy(adv: FuzzyAdvantage) -> GrowthStats:
    """Growth stats under a noisy advantage, to first order in the noise.

    With var_p0 = 0 this reduces exactly to the fixed-advantage closed form.
    """
    p0, var = adv.p0, adv.var_p0
    if not 0.5 < p0 < 1:
        raise BadRangeError(f"need 1/2 < p0 < 1, got {p0}")
    base = growth_stats_binomial(p0)
    logit = math.log(p0 / (1 - p0))
    pq = p0 * (1 - p0)
    mean = base.mean + var / (2 * pq)
    variance = base.variance + (1 - (2 * p0 - 1) * logit) / pq * var
    return GrowthStats(mean, variance)


def long_run(eps: float, sigma_bet: float, threshold: float = 2.0) -> float:
    """Minimal favorable-hand count with E(G_N)/std(G_N) >= threshold.

    Uses the small-edge closed form threshold^2 (1 + sigma_bet^2) / eps^2.
    """
    if eps <= 0:
        raise BadRangeError(f"need eps > 0, got {eps}")
    if sigma_bet < 0:
        raise BadRangeError(f"need sigma_bet >= 0, got {sigma_bet}")
    if threshold <= 0:
        raise BadRangeError(f"need threshold > 0, got {threshold}")
    return threshold**2 * (1 + sigma_bet**2) / eps**2
