"""
Integer partitions and the statistics the spectrum is built from.

Partitions are immutable, hashable and always stored without trailing zeros.
The canonical order is reverse-lexicographic, e.g. for 4:
(4), (3,1), (2,2), (2,1,1), (1,1,1,1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import accumulate, zip_longest
from typing import Iterable, Iterator

from src.exceptions import InvalidInputError

EMPTY_TOKEN = "-"


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 0 for p in parts):
            raise InvalidInputError(f"Partition parts must be non-negative: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidInputError(f"Partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def row(cls, n: int) -> "Partition":
        return cls((n,) if n > 0 else ())

    @classmethod
    def column(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @cached_property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return format_partition(self)

    def part(self, i: int) -> int:
        """The i-th part (0-based), zero past the end."""
        return self.parts[i] if i < len(self.parts) else 0

    @property
    def first_row(self) -> int:
        return self.part(0)

    @property
    def first_column(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def contains(self, other: "Partition") -> bool:
        """Young diagram containment: other_i <= self_i for every i."""
        if len(other) > len(self):
            return False
        return all(o <= s for o, s in zip(other.parts, self.parts))

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def sort_key(self) -> tuple[int, ...]:
        """Key that sorts partitions of one size in canonical order."""
        return tuple(-p for p in self.parts)


def parse_partition(text: str) -> Partition:
    """Parse the "4,3,2" serialization; "-" is the empty partition."""
    text = text.strip()
    if text in (EMPTY_TOKEN, ""):
        return Partition()
    try:
        parts = tuple(int(token) for token in text.split(","))
    except ValueError as e:
        raise InvalidInputError(f"Malformed partition: {text!r}") from e
    if any(p <= 0 for p in parts):
        raise InvalidInputError(f"Partition parts must be positive: {text!r}")
    return Partition(parts)


def format_partition(lam: Partition) -> str:
    if not lam.parts:
        return EMPTY_TOKEN
    return ",".join(str(p) for p in lam.parts)


@lru_cache(maxsize=None)
def _bounded_partitions(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _bounded_partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise InvalidInputError(f"Cannot enumerate partitions of a negative number: {n}")
    return [Partition(p) for p in _bounded_partitions(n, n)]


def partitions_with_first_row(n: int, first: int) -> list[Partition]:
    """Partitions of n whose first row has length exactly `first`."""
    if first <= 0 or first > n:
        return []
    return [Partition((first,) + rest) for rest in _bounded_partitions(n - first, first)]


def partitions_fitting(n: int, outer: Partition) -> list[Partition]:
    """
    Partitions of n contained in `outer`, canonical order.

    Rows are capped by the matching row of `outer`, so only the diagrams
    inside `outer` are ever generated.
    """
    caps = outer.parts
    # room[i] = cells available from row i downwards
    room = [sum(caps[i:]) for i in range(len(caps) + 1)]

    def build(i: int, remaining: int, bound: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        if i == len(caps) or room[i] < remaining:
            return
        for first in range(min(remaining, bound, caps[i]), 0, -1):
            for rest in build(i + 1, remaining - first, first):
                yield (first,) + rest

    if n < 0:
        return []
    return [Partition(p) for p in build(0, n, n)]


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return lam
    return Partition(tuple(sum(1 for p in lam.parts if p >= k) for k in range(1, lam.parts[0] + 1)))


def dominates(mu: Partition, lam: Partition) -> bool:
    """True iff every prefix sum of mu is at least the matching prefix sum of lam."""
    length = max(len(mu), len(lam))
    mu_prefix = accumulate(mu.part(i) for i in range(length))
    lam_prefix = accumulate(lam.part(i) for i in range(length))
    return all(l <= m for m, l in zip(mu_prefix, lam_prefix))


def diag_index(lam: Partition) -> int:
    """Sum of C(row, 2) minus sum of C(column, 2)."""
    rows = sum(math.comb(p, 2) for p in lam.parts)
    cols = sum(math.comb(p, 2) for p in conjugate(lam).parts)
    return rows - cols


def content_sum(lam: Partition) -> int:
    """Sum of j - i over the cells (i, j) of the diagram."""
    return sum(j - i for i, j in lam.cells())


def inner_product(lam: Partition, mu: Partition) -> int:
    return sum(l * m for l, m in zip(lam.parts, mu.parts))


def add_partitions(lam: Partition, mu: Partition) -> Partition:
    return Partition(tuple(l + m for l, m in zip_longest(lam.parts, mu.parts, fillvalue=0)))


def hook_lengths(lam: Partition) -> list[int]:
    conj = conjugate(lam)
    return [lam.part(i) - j + conj.part(j) - i - 1 for i, j in lam.cells()]


@lru_cache(maxsize=64)
def _partition_counts(n: int) -> tuple[int, ...]:
    counts = [1] + [0] * n
    for k in range(1, n + 1):
        for i in range(k, n + 1):
            counts[i] += counts[i - k]
    return tuple(counts)


def partition_count(n: int) -> int:
    """Exact p(n) by the coin-change recurrence."""
    if n < 0:
        return 0
    return _partition_counts(n)[n]


def hardy_ramanujan_estimate(n: int) -> float:
    if n < 1:
        raise InvalidInputError(f"Estimate is defined for n >= 1, got {n}")
    return math.exp(math.pi * math.sqrt(2 * n / 3)) / (4 * n * math.sqrt(3))


def canonical_sorted(partitions: Iterable[Partition]) -> list[Partition]:
    """Sort by size, then reverse-lexicographically within a size."""
    return sorted(partitions, key=lambda p: (p.size, p.sort_key()))
