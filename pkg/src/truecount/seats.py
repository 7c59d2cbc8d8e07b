"""Card consumption between the bet, play, and dealer moments by seat.

A table deals 2 cards to each of ``seats`` players plus the dealer before
any play decision, then players complete hands in seat order.  Hand length
is 2 plus a small random number of extra cards H; only E[H] enters the
closed-form card counts, the full law matters to the simulator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BadRangeError

#: Default extra-cards law with mean 0.6, i.e. 2.6 cards per hand.
DEFAULT_EXTRA_LAW: tuple[tuple[int, float], ...] = ((0, 0.55), (1, 0.30), (2, 0.15))

MOMENT_PAIRS = ("bet_play", "play_dealer")


def _law_for_mean(extra_mean: float) -> tuple[tuple[int, float], ...]:
    """Two-point law on {floor(h), floor(h)+1} with the requested mean."""
    if extra_mean < 0:
        raise BadRangeError(f"extra-card mean must be >= 0, got {extra_mean}")
    base = math.floor(extra_mean)
    frac = extra_mean - base
    if frac == 0:
        return ((base, 1.0),)
    return ((base, 1.0 - frac), (base + 1, frac))


@dataclass(frozen=True)
class SeatCardModel:
    """A player's position at a table plus the hand-length law."""

    seats: int = 7
    position: int = 1
    extra_cards_law: tuple[tuple[int, float], ...] = field(default=DEFAULT_EXTRA_LAW)

    def __post_init__(self):
        if not 1 <= self.seats <= 7:
            raise BadRangeError(f"seats must be in 1..7, got {self.seats}")
        if not 1 <= self.position <= self.seats:
            raise BadRangeError(
                f"position must be in 1..{self.seats}, got {self.position}"
            )
        probs = [p for _, p in self.extra_cards_law]
        if any(p < 0 for p in probs) or abs(sum(probs) - 1.0) > 1e-9:
            raise BadRangeError(f"bad extra-cards law {self.extra_cards_law}")
        if any(h < 0 or h != int(h) for h, _ in self.extra_cards_law):
            raise BadRangeError("extra card counts must be non-negative integers")

    @classmethod
    def with_hand_mean(cls, seats: int, position: int, mean_cards_per_hand: float):
        if mean_cards_per_hand < 2:
            raise BadRangeError(
                f"mean cards per hand must be >= 2, got {mean_cards_per_hand}"
            )
        return cls(seats, position, _law_for_mean(mean_cards_per_hand - 2))

    @property
    def extra_mean(self) -> float:
        return sum(h * p for h, p in self.extra_cards_law)

    @property
    def mean_cards_per_hand(self) -> float:
        return 2 + self.extra_mean

    @property
    def max_extra(self) -> int:
        return max(h for h, _ in self.extra_cards_law)


def n_cards_between(model: SeatCardModel, moment_pair: str) -> float:
    """Expected cards consumed between two decision moments at this seat.

    ``bet_play``: the initial deal to every hand plus the hands completed
    by seats ahead of this position.  ``play_dealer``: hands completed by
    this position through the last seat before the dealer acts.
    """
    h = model.extra_mean
    if moment_pair == "bet_play":
        return 2 * (model.seats + 1) + (model.position - 1) * h
    if moment_pair == "play_dealer":
        return (model.seats - model.position + 1) * h
    raise BadRangeError(f"moment_pair must be one of {MOMENT_PAIRS}, got {moment_pair!r}")


def sigma_ratio(model_a: SeatCardModel, model_b: SeatCardModel, moment_pair: str) -> float:
    """Ratio of true-count stds between two seat models, in the N >> n regime."""
    n_a = n_cards_between(model_a, moment_pair)
    n_b = n_cards_between(model_b, moment_pair)
    if n_b == 0:
        raise BadRangeError("reference model consumes no cards for this moment pair")
    return math.sqrt(n_a / n_b)
