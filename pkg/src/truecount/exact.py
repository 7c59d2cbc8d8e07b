"""Exact distribution of the true count after n removals.

The distribution is materialized over removal censuses (how many cards of
each weight class were removed) instead of ordered removal sequences; the
census probabilities are multivariate hypergeometric and everything is
computed in big-integer / rational arithmetic.  Square roots appear only
when a standard deviation is presented as a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .counting import CountSystem, WeightComposition, as_weight
from .errors import BadRangeError, InfeasiblePrefixError


class SigmaResult(NamedTuple):
    """A standard deviation with its exactly-represented square."""

    value: float
    squared: Fraction


@dataclass(frozen=True)
class TrueCountDistribution:
    """Finite rational law of the true count after ``n`` removals."""

    atoms: tuple[tuple[Fraction, Fraction], ...]  # (value, probability), sorted
    n: int
    source: WeightComposition

    def probabilities_sum(self) -> Fraction:
        return sum((p for _, p in self.atoms), Fraction(0))

    def mean(self) -> Fraction:
        return sum((v * p for v, p in self.atoms), Fraction(0))

    def variance(self) -> Fraction:
        m = self.mean()
        return sum((p * (v - m) ** 2 for v, p in self.atoms), Fraction(0))

    def to_json_dict(self, units: str = "card") -> dict:
        scale = 52 if units == "deck" else 1
        return {
            "n": self.n,
            "atoms": [
                {"value": str(v * scale), "prob": str(p)} for v, p in self.atoms
            ],
        }


def _scaled_weights(comp: WeightComposition) -> tuple[list[tuple[int, int]], int]:
    """Integer-scale the weight classes: returns ([(w_scaled, l_w)], scale)."""
    weights = comp.weights()
    scale = 1
    for w in weights:
        scale = scale * w.denominator // math.gcd(scale, w.denominator)
    items = [(int(w * scale), comp.counts[w]) for w in weights if comp.counts[w] > 0]
    return items, scale


def _census_weight_sums(items: Sequence[tuple[int, int]], n: int) -> dict[int, int]:
    """Map scaled removed-weight sum -> number of n-card subsets achieving it.

    Dynamic programming over weight classes; the returned multiplicities are
    products of binomial coefficients summed over censuses, so they total
    C(N, n) exactly.
    """
    states: dict[tuple[int, int], int] = {(0, 0): 1}  # (cards removed, sum) -> ways
    remaining = sum(l for _, l in items)
    for w, l in items:
        remaining -= l
        new: dict[tuple[int, int], int] = {}
        for (r, s), ways in states.items():
            # Prune branches that can no longer reach n removals.
            c_min = max(0, n - r - remaining)
            c_max = min(l, n - r)
            for c in range(c_min, c_max + 1):
                key = (r + c, s + c * w)
                new[key] = new.get(key, 0) + ways * math.comb(l, c)
        states = new
    return {s: ways for (r, s), ways in states.items() if r == n}


def tc_distribution(comp: WeightComposition, n: int) -> TrueCountDistribution:
    """Exact law of the true count after removing ``n`` unseen cards."""
    N = comp.total
    if not 1 <= n < N:
        raise BadRangeError(f"need 1 <= n < N, got n={n}, N={N}")
    items, scale = _scaled_weights(comp)
    sums = _census_weight_sums(items, n)
    denom = math.comb(N, n)
    R = comp.running_count
    atoms: dict[Fraction, Fraction] = {}
    for s, ways in sums.items():
        value = (R + Fraction(s, scale)) / (N - n)
        atoms[value] = atoms.get(value, Fraction(0)) + Fraction(ways, denom)
    ordered = tuple(sorted(atoms.items()))
    return TrueCountDistribution(atoms=ordered, n=n, source=comp)


def expected_tc(comp: WeightComposition, n: int) -> Fraction:
    """Mean true count after ``n`` removals, computed from the full law.

    The enumerated mean is checked against R/N; a mismatch would mean the
    enumeration is broken, so it raises instead of returning.
    """
    dist = tc_distribution(comp, n)
    mean = dist.mean()
    expected = comp.true_count("card")
    if mean != expected:
        raise AssertionError(
            f"enumerated mean {mean} != R/N = {expected} for n={n}"
        )
    return mean


def sigma1_exact(comp: WeightComposition) -> SigmaResult:
    """Std of the true count after one removal, from the deck census."""
    N = comp.total
    if N < 2:
        raise BadRangeError(f"need N >= 2, got N={N}")
    tc = comp.true_count("card")
    second = sum(
        (w * w * Fraction(l, N) for w, l in comp.counts.items()), Fraction(0)
    )
    squared = (second - tc * tc) / (N - 1) ** 2
    return SigmaResult(math.sqrt(squared), squared)


def sigma_n_exact(comp: WeightComposition, n: int) -> SigmaResult:
    """Closed-form std of the true count after ``n`` removals."""
    N = comp.total
    if N < 2 or not 1 <= n < N:
        raise BadRangeError(f"need N >= 2 and 1 <= n < N, got n={n}, N={N}")
    squared = Fraction(N - 1, N - n) * n * sigma1_exact(comp).squared
    return SigmaResult(math.sqrt(squared), squared)


def sigma1_approx(N: int, system: CountSystem) -> float:
    """Large-deck approximation sigma1 ~ Sigma0 / N (card units)."""
    if N < 2:
        raise BadRangeError(f"need N >= 2, got N={N}")
    return system.sigma0() / N


def sigma_n_approx(N: float, n: float, system: CountSystem) -> float:
    """Approximation sqrt(n) * Sigma0 / N; accepts non-integer average n."""
    if n < 0 or (n and n >= N):
        raise BadRangeError(f"need 0 <= n < N, got n={n}, N={N}")
    return math.sqrt(n) * system.sigma0() / N


# ---------------------------------------------------------------------------
# Identity checkers: both sides evaluated as exact rationals.

@dataclass(frozen=True)
class IdentityReport:
    """Both sides of a combinatorial identity, for diagnosable failures."""

    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _depleted_count(comp: WeightComposition, removed: Sequence[Fraction], w: Fraction) -> int:
    # May go negative inside sums over infeasible branches; that is fine,
    # the identities hold algebraically.
    return comp.counts.get(w, 0) - sum(1 for r in removed if r == w)


def _check_prefix(comp: WeightComposition, prefix: Sequence) -> list[Fraction]:
    prefix = [as_weight(w) for w in prefix]
    try:
        comp.deplete(prefix)
    except Exception as exc:
        raise InfeasiblePrefixError(f"prefix {prefix} not drawable") from exc
    return prefix


def check_lemma1(comp: WeightComposition, prefix: Sequence, v0) -> IdentityReport:
    """One random removal does not change the chance of next drawing v0."""
    prefix = _check_prefix(comp, prefix)
    v0 = as_weight(v0)
    N, p = comp.total, len(prefix)
    if p > N - 2:
        raise BadRangeError(f"need len(prefix) <= N - 2, got {p} with N={N}")
    lhs = Fraction(0)
    for w in comp.weights():
        lhs += (
            Fraction(_depleted_count(comp, prefix, w), N - p)
            * Fraction(_depleted_count(comp, [*prefix, w], v0), N - p - 1)
        )
    rhs = Fraction(_depleted_count(comp, prefix, v0), N - p)
    return IdentityReport("lemma1", lhs, rhs)


def check_lemma2(comp: WeightComposition, prefix: Sequence, vs: Sequence) -> IdentityReport:
    """Ordered-clump version: removal of one random card preserves the law."""
    prefix = _check_prefix(comp, prefix)
    vs = [as_weight(v) for v in vs]
    N, p, q = comp.total, len(prefix), len(vs) - 1
    if not vs:
        raise BadRangeError("need at least one v weight")
    if p + q > N - 2:
        raise BadRangeError(f"need p + q <= N - 2, got p={p}, q={q}, N={N}")
    lhs = Fraction(0)
    for w in comp.weights():
        term = Fraction(_depleted_count(comp, prefix, w), N - p)
        for j, v in enumerate(vs):
            removed = [*prefix, *vs[:j], w]
            term *= Fraction(_depleted_count(comp, removed, v), N - p - 1 - j)
        lhs += term
    rhs = Fraction(1)
    for j, v in enumerate(vs):
        removed = [*prefix, *vs[:j]]
        rhs *= Fraction(_depleted_count(comp, removed, v), N - p - j)
    return IdentityReport("lemma2", lhs, rhs)


def check_lemma34(
    comp: WeightComposition, prefix: Sequence, k: int, vs: Sequence
) -> IdentityReport:
    """k-fold removal invariance (ordered-tuple sum over k removed cards)."""
    prefix = _check_prefix(comp, prefix)
    vs = [as_weight(v) for v in vs]
    N, p, q = comp.total, len(prefix), len(vs) - 1
    if k < 1:
        raise BadRangeError(f"need k >= 1, got {k}")
    if not vs or p + k + q > N - 1:
        raise BadRangeError(f"need p + k + q <= N - 1, got p={p}, k={k}, q={q}, N={N}")
    weights = comp.weights()

    def tuple_sum(removed_tuple: list[Fraction], depth: int, acc: Fraction) -> Fraction:
        if depth == k:
            term = acc
            for j, v in enumerate(vs):
                removed = [*prefix, *vs[:j], *removed_tuple]
                term *= Fraction(_depleted_count(comp, removed, v), N - p - k - j)
            return term
        total = Fraction(0)
        for w in weights:
            c = _depleted_count(comp, [*prefix, *removed_tuple], w)
            if c == 0:
                continue
            total += tuple_sum(
                [*removed_tuple, w],
                depth + 1,
                acc * Fraction(c, N - p - depth),
            )
        return total

    lhs = tuple_sum([], 0, Fraction(1))
    rhs = Fraction(1)
    for j, v in enumerate(vs):
        removed = [*prefix, *vs[:j]]
        rhs *= Fraction(_depleted_count(comp, removed, v), N - p - j)
    return IdentityReport("lemma34", lhs, rhs)


def check_lemma6(R, N: int, n: int, ws: Sequence) -> IdentityReport:
    """Telescoping identity tying the n-removal increment to one-card terms."""
    R = as_weight(R)
    ws = [as_weight(w) for w in ws]
    if not 1 <= n < N or len(ws) != n:
        raise BadRangeError(f"need 1 <= n < N and len(ws) == n, got n={n}, N={N}")
    lhs = (R + sum(ws)) / (N - n) - Fraction(R, N)
    rhs = Fraction(N - 1, N - n) * sum(
        ((R + w) / (N - 1) - Fraction(R, N) for w in ws), Fraction(0)
    )
    return IdentityReport("lemma6", lhs, rhs)
