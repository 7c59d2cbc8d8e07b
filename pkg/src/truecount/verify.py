"""Verification sweeps: exact identity checks and closed-form cross-checks.

These drive both the ``verify`` CLI subcommand and the acceptance tests.
Every identity is evaluated in exact rational arithmetic; the Kelly sweep
uses the bracketing search with its stated tolerance.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import WeightComposition
from .exact import (
    check_lemma1,
    check_lemma2,
    check_lemma34,
    check_lemma6,
    sigma1_exact,
    tc_distribution,
)
from .kelly import verify_kelly_optimality

#: Weight sets used by the exhaustive sweeps.
WEIGHT_SETS: tuple[tuple[Fraction, ...], ...] = (
    (Fraction(-1), Fraction(1)),
    (Fraction(-1), Fraction(0), Fraction(1)),
    (Fraction(-2), Fraction(-1), Fraction(1), Fraction(2)),
    (Fraction(-3, 2), Fraction(-1, 2), Fraction(1, 2), Fraction(1)),
)


@dataclass
class VerificationResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str):
        self.checked += 1
        if not ok:
            self.failures.append(detail)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.checked} checks"
        if self.failures:
            line += f", {len(self.failures)} failures"
        return line + ")"


def compositions_over(weights, total: int):
    """All censuses of ``total`` cards over the given weight classes."""
    k = len(weights)

    def parts(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining + 1):
            for rest in parts(remaining - first, slots - 1):
                yield (first, *rest)

    for counts in parts(total, k):
        yield WeightComposition(dict(zip(weights, counts)))


def _random_composition(rng: random.Random, n_max: int) -> WeightComposition:
    weights = rng.choice(WEIGHT_SETS)
    total = rng.randint(3, n_max)
    cuts = sorted(rng.randint(0, total) for _ in range(len(weights) - 1))
    counts = [b - a for a, b in zip([0, *cuts], [*cuts, total])]
    return WeightComposition(dict(zip(weights, counts)))


def _random_feasible_sequence(rng: random.Random, comp: WeightComposition, length: int):
    pool = [w for w, l in comp.counts.items() for _ in range(l)]
    rng.shuffle(pool)
    return pool[:length]


def verify_lemmas(
    seed: int = 0, exhaustive_n: int = 8, random_instances: int = 100, random_n_max: int = 20
) -> VerificationResult:
    """Exhaustive small-deck plus seeded random checks of the four identities."""
    result = VerificationResult("lemmas")

    def note(report, comp, extra=""):
        result.record(
            report.equal,
            f"{report.name} comp={dict(comp.counts)} {extra}: "
            f"lhs={report.lhs} rhs={report.rhs}",
        )

    for weights in WEIGHT_SETS[:2]:
        for total in range(2, exhaustive_n + 1):
            for comp in compositions_over(weights, total):
                prefixes = [()]
                for length in (1, 2):
                    prefixes += [
                        p
                        for p in itertools.product(weights, repeat=length)
                        if _feasible(comp, p)
                    ]
                for prefix in prefixes:
                    p = len(prefix)
                    for v0 in weights:
                        if p <= total - 2:
                            note(check_lemma1(comp, prefix, v0), comp, f"prefix={prefix}")
                    for q in (0, 1):
                        if p + q > total - 2:
                            continue
                        for vs in itertools.product(weights, repeat=q + 1):
                            note(check_lemma2(comp, prefix, vs), comp, f"prefix={prefix}")
                    for k in (1, 2):
                        for q in (0, 1):
                            if p + k + q > total - 1:
                                continue
                            for vs in itertools.product(weights, repeat=q + 1):
                                note(
                                    check_lemma34(comp, prefix, k, vs),
                                    comp,
                                    f"prefix={prefix} k={k}",
                                )
                for n in range(1, min(3, total)):
                    for ws in itertools.product(weights, repeat=n):
                        note(
                            check_lemma6(comp.running_count, total, n, ws),
                            comp,
                            f"ws={ws}",
                        )

    rng = random.Random(seed)
    for _ in range(random_instances):
        comp = _random_composition(rng, random_n_max)
        total = comp.total
        weights = comp.weights()
        prefix = _random_feasible_sequence(rng, comp, rng.randint(0, min(3, total - 2)))
        v0 = rng.choice(weights)
        note(check_lemma1(comp, prefix, v0), comp, f"prefix={prefix}")

        q = rng.randint(0, min(2, total - 2 - len(prefix)))
        vs = [rng.choice(weights) for _ in range(q + 1)]
        note(check_lemma2(comp, prefix, vs), comp, f"prefix={prefix}")

        k = rng.randint(1, max(1, min(3, total - 1 - len(prefix) - q)))
        if len(prefix) + k + q <= total - 1:
            note(check_lemma34(comp, prefix, k, vs), comp, f"prefix={prefix} k={k}")

        n = rng.randint(1, total - 1)
        ws = [rng.choice(weights) for _ in range(n)]
        r = Fraction(rng.randint(-10, 10), rng.choice((1, 2)))
        note(check_lemma6(r, total, n, ws), comp, f"R={r} ws={ws}")
    return result


def _feasible(comp: WeightComposition, seq) -> bool:
    counts: dict = {}
    for w in seq:
        counts[w] = counts.get(w, 0) + 1
    return all(comp.counts.get(w, 0) >= c for w, c in counts.items())


def _check_moments(result: VerificationResult, comp: WeightComposition):
    total = comp.total
    expected_mean = comp.true_count("card")
    s1_sq = sigma1_exact(comp).squared
    for n in range(1, total):
        dist = tc_distribution(comp, n)
        result.record(
            dist.probabilities_sum() == 1,
            f"probs sum != 1 for comp={dict(comp.counts)} n={n}",
        )
        result.record(
            dist.mean() == expected_mean,
            f"mean {dist.mean()} != R/N {expected_mean} for "
            f"comp={dict(comp.counts)} n={n}",
        )
        closed = Fraction(total - 1, total - n) * n * s1_sq
        result.record(
            dist.variance() == closed,
            f"variance {dist.variance()} != closed form {closed} for "
            f"comp={dict(comp.counts)} n={n}",
        )


def verify_theorem(
    seed: int = 0,
    exhaustive_limits: tuple[int, ...] = (16, 12, 10, 10),
    sampled_totals: tuple[int, ...] = (14, 18, 22, 26, 30),
    samples_per_total: int = 4,
) -> VerificationResult:
    """Mean and variance of the enumerated law vs the closed forms, exactly."""
    result = VerificationResult("theorem")
    for weights, n_max in zip(WEIGHT_SETS, exhaustive_limits):
        for total in range(2, n_max + 1):
            for comp in compositions_over(weights, total):
                _check_moments(result, comp)
    rng = random.Random(seed)
    for total in sampled_totals:
        for weights in WEIGHT_SETS:
            for _ in range(samples_per_total):
                cuts = sorted(rng.randint(0, total) for _ in range(len(weights) - 1))
                counts = [b - a for a, b in zip([0, *cuts], [*cuts, total])]
                _check_moments(result, WeightComposition(dict(zip(weights, counts))))
    return result


def verify_kelly(
    lo: float = 0.505, hi: float = 0.95, step: float = 0.005, tolerance: float = 1e-6
) -> VerificationResult:
    """Bracketing-search optimality of the 2p-1 fraction over a p grid."""
    result = VerificationResult("kelly")
    steps = round((hi - lo) / step)
    for i in range(steps + 1):
        p0 = lo + i * step
        report = verify_kelly_optimality(p0, tolerance)
        result.record(
            report.passed,
            f"p0={p0}: argmax={report.argmax} expected={report.expected} "
            f"gap={report.gap} concave={report.concave_at_max}",
        )
    return result


def verify_all(seed: int = 0) -> list[VerificationResult]:
    return [verify_lemmas(seed=seed), verify_theorem(seed=seed), verify_kelly()]
