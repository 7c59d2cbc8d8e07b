"""Balanced count systems and weight-class deck compositions.

Weights and running counts are kept as exact :class:`fractions.Fraction`
values throughout, so every downstream distribution computation stays
rational.  Floats only appear at presentation boundaries (``sigma0``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    BadRangeError,
    EmptyClassError,
    EmptyDeckError,
    InvalidMultiplicityError,
    ParseError,
    UnbalancedSystemError,
    UnknownSystemError,
)

# Ten-class merged layout: T stands for 10/J/Q/K.
MERGED_RANKS = ("A", "2", "3", "4", "5", "6", "7", "8", "9", "T")
FULL_RANKS = ("A", "2", "3", "4", "5", "6", "7", "8", "9", "T", "J", "Q", "K")

_RANK_ALIASES = {"10": "T", "t": "T", "a": "A", "j": "J", "q": "Q", "k": "K"}


def _canon_rank(rank: str) -> str:
    rank = rank.strip()
    return _RANK_ALIASES.get(rank, rank.upper() if rank.isalpha() else rank)


def as_weight(value) -> Fraction:
    """Coerce ints, floats, strings and Fractions to an exact rational weight."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Halves are exact in binary, so this is lossless for valid systems.
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad weight {value!r}") from exc
    raise ParseError(f"bad weight {value!r}")


@dataclass(frozen=True)
class CountSystem:
    """A balanced card-counting scheme: per-rank weights and multiplicities."""

    name: str
    weights: Mapping[str, Fraction]
    rank_multiplicity: Mapping[str, int]

    def weight_multiplicities(self) -> dict[Fraction, int]:
        """Cards per 52-card deck aggregated by weight class."""
        agg: dict[Fraction, int] = {}
        for rank, w in self.weights.items():
            agg[w] = agg.get(w, 0) + self.rank_multiplicity[rank]
        return agg

    def sigma0_squared(self) -> Fraction:
        return sum(
            (w * w * Fraction(m, 52) for w, m in self.weight_multiplicities().items()),
            Fraction(0),
        )

    def sigma0(self) -> float:
        """Standard deviation of the system's weights over a full deck."""
        return math.sqrt(self.sigma0_squared())


def make_count_system(name: str, weights_by_rank: Mapping[str, object]) -> CountSystem:
    """Validate and build a balanced count system.

    ``weights_by_rank`` must cover either the 10-rank merged layout
    (ten-class worth 16 cards) or all 13 ranks.  Raises
    :class:`UnbalancedSystemError` when the full-deck weight sum is nonzero.
    """
    weights = {_canon_rank(r): as_weight(w) for r, w in weights_by_rank.items()}
    ranks = frozenset(weights)
    if ranks == frozenset(MERGED_RANKS):
        mult = {r: 16 if r == "T" else 4 for r in MERGED_RANKS}
    elif ranks == frozenset(FULL_RANKS):
        mult = {r: 4 for r in FULL_RANKS}
    else:
        raise InvalidMultiplicityError(
            f"expected ranks {MERGED_RANKS} or {FULL_RANKS}, got {sorted(ranks)}"
        )
    if sum(mult.values()) != 52:
        raise InvalidMultiplicityError("rank multiplicities must sum to 52")
    for rank, w in weights.items():
        if (2 * w).denominator != 1:
            raise ParseError(f"weight for rank {rank} is not a half-integer: {w}")
    total = sum((w * mult[r] for r, w in weights.items()), Fraction(0))
    if total != 0:
        raise UnbalancedSystemError(f"{name}: full-deck weight sum is {total}, not 0")
    return CountSystem(name=name, weights=weights, rank_multiplicity=mult)


def sigma0(system: CountSystem) -> float:
    """Weight standard deviation of a system over a full 52-card deck."""
    return system.sigma0()


_BUILTIN_WEIGHTS: dict[str, dict[str, object]] = {
    "hi-lo": {
        "A": -1, "2": 1, "3": 1, "4": 1, "5": 1, "6": 1,
        "7": 0, "8": 0, "9": 0, "T": -1,
    },
    "uston-ace-five": {
        "A": -1, "2": 0, "3": 0, "4": 0, "5": 1, "6": 0,
        "7": 0, "8": 0, "9": 0, "T": 0,
    },
    "hi-opt-i": {
        "A": 0, "2": 0, "3": 1, "4": 1, "5": 1, "6": 1,
        "7": 0, "8": 0, "9": 0, "T": -1,
    },
    "hi-opt-ii": {
        "A": 0, "2": 1, "3": 1, "4": 2, "5": 2, "6": 1,
        "7": 1, "8": 0, "9": 0, "T": -2,
    },
    "halves": {
        "A": -1, "2": "1/2", "3": 1, "4": 1, "5": "3/2", "6": 1,
        "7": "1/2", "8": 0, "9": "-1/2", "T": -1,
    },
    "zen": {
        "A": -1, "2": 1, "3": 1, "4": 2, "5": 2, "6": 2,
        "7": 1, "8": 0, "9": 0, "T": -2,
    },
    "canfield-expert": {
        "A": 0, "2": 0, "3": 1, "4": 1, "5": 1, "6": 1,
        "7": 1, "8": 0, "9": -1, "T": -1,
    },
    "canfield-master": {
        "A": 0, "2": 1, "3": 1, "4": 2, "5": 2, "6": 2,
        "7": 1, "8": 0, "9": -1, "T": -2,
    },
    "uston-advanced-plus-minus": {
        "A": -1, "2": 0, "3": 1, "4": 1, "5": 1, "6": 1,
        "7": 1, "8": 0, "9": 0, "T": -1,
    },
    "revere-point-count": {
        "A": -2, "2": 1, "3": 2, "4": 2, "5": 2, "6": 2,
        "7": 1, "8": 0, "9": 0, "T": -2,
    },
    # Registered with the canonical published weights.  Its computed weight
    # dispersion (6.702) differs from the widely circulated 5.798 figure,
    # which is only reproducible by counting 4 ten-value cards per deck
    # instead of 16.  See README "Known catalog discrepancies".
    "thorp-ultimate": {
        "A": -9, "2": 5, "3": 6, "4": 8, "5": 11, "6": 6,
        "7": 4, "8": 0, "9": -3, "T": -7,
    },
}


def builtin_systems() -> list[CountSystem]:
    """All registered builtin systems, each validated for balance."""
    return [make_count_system(name, w) for name, w in _BUILTIN_WEIGHTS.items()]


def get_system(name: str) -> CountSystem:
    """Look up a builtin system by name (case-insensitive)."""
    key = name.strip().lower()
    if key not in _BUILTIN_WEIGHTS:
        raise UnknownSystemError(
            f"unknown count system {name!r}; known: {', '.join(sorted(_BUILTIN_WEIGHTS))}"
        )
    return make_count_system(key, _BUILTIN_WEIGHTS[key])


@dataclass(frozen=True)
class WeightComposition:
    """Census of a remaining deck by weight class.

    ``counts`` maps each weight to the number of remaining cards of that
    class.  The running count follows the reveal convention: revealing a
    card of weight ``w`` adds ``w`` to the running count, i.e.
    ``R = -sum(w * l_w)``.
    """

    counts: Mapping[Fraction, int] = field(default_factory=dict)

    def __post_init__(self):
        for w, l in self.counts.items():
            if l < 0:
                raise EmptyClassError(f"negative count {l} for weight {w}")

    @property
    def total(self) -> int:
        """N, the number of cards remaining."""
        return sum(self.counts.values())

    @property
    def running_count(self) -> Fraction:
        return -sum((w * l for w, l in self.counts.items()), Fraction(0))

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.counts))

    def deplete(self, removed: Iterable) -> "WeightComposition":
        """Remove one card per listed weight; raises EmptyClassError if short."""
        counts = dict(self.counts)
        for raw in removed:
            w = as_weight(raw)
            have = counts.get(w, 0)
            if have <= 0:
                raise EmptyClassError(f"no cards of weight {w} left to remove")
            counts[w] = have - 1
        return WeightComposition(counts)

    def true_count(self, units: str = "card") -> Fraction:
        """R/N in card units, or 52R/N in deck units."""
        n = self.total
        if n == 0:
            raise EmptyDeckError("true count undefined for an empty composition")
        tc = Fraction(self.running_count, n)
        if units == "card":
            return tc
        if units == "deck":
            return 52 * tc
        raise ParseError(f"units must be 'card' or 'deck', got {units!r}")


def composition(counts: Mapping[object, int]) -> WeightComposition:
    """Build a composition from a plain weight -> count mapping."""
    return WeightComposition({as_weight(w): int(l) for w, l in counts.items()})


def fresh_shoe(system: CountSystem, decks: int) -> WeightComposition:
    """Full shoe of ``decks`` decks under ``system``; running count 0."""
    if decks < 1:
        raise BadRangeError(f"decks must be >= 1, got {decks}")
    return WeightComposition(
        {w: m * decks for w, m in system.weight_multiplicities().items()}
    )


def deplete(comp: WeightComposition, removed: Iterable) -> WeightComposition:
    return comp.deplete(removed)


def true_count(comp: WeightComposition, units: str = "card") -> Fraction:
    return comp.true_count(units)


def parse_composition(spec: str) -> WeightComposition:
    """Parse ``"+1:5,-1:5,0:3"`` style weight:count lists."""
    counts: dict[Fraction, int] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise ParseError(f"bad composition entry {part!r}, expected weight:count")
        w_str, _, l_str = part.partition(":")
        w = as_weight(w_str.strip())
        try:
            l = int(l_str)
        except ValueError as exc:
            raise ParseError(f"bad count {l_str!r} for weight {w}") from exc
        if l < 0:
            raise ParseError(f"negative count for weight {w}")
        counts[w] = counts.get(w, 0) + l
    if not counts:
        raise ParseError(f"empty composition spec {spec!r}")
    return WeightComposition(counts)


def format_weight(w: Fraction) -> str:
    if w.denominator == 1:
        return f"{'+' if w > 0 else ''}{w.numerator}"
    return f"{'+' if w > 0 else ''}{float(w)}"


def format_composition(comp: WeightComposition) -> str:
    parts = [f"{format_weight(w)}:{comp.counts[w]}" for w in comp.weights()]
    return ",".join(parts)


def parse_system_file(text: str, name: str = "custom") -> CountSystem:
    """Parse a plain-text system definition: one ``rank weight`` line per rank.

    ``#`` starts a comment; weights are decimals in halves (e.g. ``5 1.5``).
    """
    weights: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected 'rank weight', got {raw!r}")
        rank = _canon_rank(fields[0])
        if rank in weights:
            raise ParseError(f"line {lineno}: duplicate rank {rank}")
        try:
            weights[rank] = Fraction(fields[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {lineno}: bad weight {fields[1]!r}") from exc
    return make_count_system(name, weights)
