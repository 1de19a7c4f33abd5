"""
Deck split and bias of the biased random transposition shuffle.

Cards 0 .. n_a-1 form the set A and cards n_a .. N-1 form B. Each draw picks
a card from A with probability a/N and from B with probability b/N, where
a = 2 - b. This is a probability measure exactly when a*n_a + b*n_b = N, which
holds for every b when the split is balanced and only for b = 1 otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from src.exceptions import InvalidInputError, UnbalancedSplitError


def parse_rational(text: str | int | float | Fraction) -> Fraction:
    """Parse "p/q" or a decimal literal ("0.5") into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        # shortest round-trip literal
        text = repr(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Malformed rational: {text!r}") from e


@dataclass(frozen=True)
class ShuffleParams:
    """Deck split (n_a, n_b) and bias b in (0, 1]."""

    n_a: int
    n_b: int
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", parse_rational(self.b))
        if self.n_a < 1 or self.n_b < 1:
            raise InvalidInputError(f"Both halves need at least one card, got n_a={self.n_a}, n_b={self.n_b}")
        if not 0 < self.b <= 1:
            raise InvalidInputError(f"Bias b must lie in (0, 1], got {self.b}")
        if self.n_a != self.n_b and self.b != 1:
            raise UnbalancedSplitError(
                f"Split {self.n_a}/{self.n_b} with b={self.b} does not give a probability measure; "
                "unbalanced decks need b = 1"
            )

    @classmethod
    def balanced(cls, n: int, b: str | int | float | Fraction) -> "ShuffleParams":
        return cls(n, n, parse_rational(b))

    def __str__(self) -> str:
        return f"ShuffleParams(n_a={self.n_a}, n_b={self.n_b}, b={self.b})"

    @property
    def a(self) -> Fraction:
        return 2 - self.b

    @property
    def N(self) -> int:
        return self.n_a + self.n_b

    @property
    def is_balanced(self) -> bool:
        return self.n_a == self.n_b

    @property
    def n(self) -> int:
        """Half-deck size; only defined for balanced decks."""
        self.require_balanced()
        return self.n_a

    @property
    def a_star(self) -> Fraction:
        return 2 - 1 / self.a

    def require_balanced(self) -> None:
        if not self.is_balanced:
            raise UnbalancedSplitError(f"Operation needs n_a = n_b, got {self.n_a} and {self.n_b}")

    def card_weight(self, card: int) -> Fraction:
        """Probability that one draw picks `card`."""
        return (self.a if card < self.n_a else self.b) / self.N

    @property
    def t_mix(self) -> float:
        """Predicted cutoff time (1/2b) N log N."""
        return self.N * math.log(self.N) / (2 * float(self.b))

    def shuffles_at(self, c: float) -> float:
        """(N/2b)(log N - c), the time at window position c."""
        return self.N * (math.log(self.N) - c) / (2 * float(self.b))

    def shuffles_at_rounded(self, c: float) -> int:
        return max(0, round(self.shuffles_at(c)))
