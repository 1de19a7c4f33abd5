"""
Tableau counting: standard Young tableaux, Kostka numbers and
Littlewood-Richardson coefficients.

Kostka numbers and LR coefficients share one counting kernel that fills a skew
shape row by row. A row is described by how many times each value occurs in it;
inside a row the values are forced to be weakly increasing, so the row
multiplicities determine the row. Column strictness and the lattice-word
condition are both conditions on prefix counts, which lets the kernel memoize
on (row, cumulative content, prefix profile of the previous row).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterator, Optional, Sequence

from loguru import logger

from src.combinatorics.partitions import (
    Partition,
    add_partitions,
    dominates,
    enumerate_partitions,
    hook_lengths,
    partitions_fitting,
)
from src.exceptions import InvalidInputError
from src.logger_decorator import log_engine_call


@dataclass(frozen=True)
class SkewShape:
    """The skew diagram outer/inner."""

    outer: Partition
    inner: Partition

    def __post_init__(self):
        if not self.outer.contains(self.inner):
            raise InvalidInputError(f"{self.inner} is not contained in {self.outer}")

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def cells(self) -> Iterator[tuple[int, int]]:
        for r in range(len(self.outer)):
            for c in range(self.inner.part(r), self.outer.part(r)):
                yield r, c


def _count_fillings(
    outer: tuple[int, ...],
    inner: tuple[int, ...],
    content: tuple[int, ...],
    lattice: bool,
) -> int:
    """
    Count semistandard fillings of outer/inner with the given content.

    With lattice=True only fillings whose reverse reading word (rows top to
    bottom, each row right to left) is a lattice word are counted.
    """
    rows = len(outer)
    inner = inner + (0,) * (rows - len(inner))
    m = len(content)
    if m == 0:
        return 1 if outer == inner[:rows] else 0

    memo: dict[tuple, int] = {}

    def row_choices(r: int, cum: tuple[int, ...], prev_prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        width = outer[r] - inner[r]
        counts = [0] * m

        def extend(v: int, filled: int) -> Iterator[tuple[int, ...]]:
            if v == m:
                if filled == width:
                    yield tuple(counts)
                return
            cap = min(content[v] - cum[v], width - filled)
            if lattice and v > 0:
                cap = min(cap, cum[v - 1] - cum[v])
            if r > 0:
                # entries <= v of row r sit strictly below entries <= v-1 of row r-1
                above = inner[r - 1] + (prev_prefix[v - 1] if v > 0 else 0) - inner[r]
                cap = min(cap, above - filled)
            for k in range(cap, -1, -1):
                counts[v] = k
                yield from extend(v + 1, filled + k)
            counts[v] = 0

        yield from extend(0, 0)

    def fill(r: int, cum: tuple[int, ...], prev_prefix: tuple[int, ...]) -> int:
        if r == rows:
            return 1 if cum == content else 0
        key = (r, cum, prev_prefix)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = 0
        for counts in row_choices(r, cum, prev_prefix):
            new_cum = tuple(c + k for c, k in zip(cum, counts))
            total += fill(r + 1, new_cum, tuple(accumulate(counts)))
        memo[key] = total
        return total

    return fill(0, (0,) * m, (0,) * m)


@lru_cache(maxsize=65536)
def count_syt(lam: Partition) -> int:
    """f_lambda by the hook-length formula."""
    return math.factorial(lam.size) // math.prod(hook_lengths(lam))


def enumerate_syt(lam: Partition) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Generate every standard Young tableau of shape lam, rows as tuples."""
    n = lam.size
    rows = len(lam)
    filling: list[list[int]] = [[] for _ in range(rows)]

    def place(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if k > n:
            yield tuple(tuple(row) for row in filling)
            return
        for i in range(rows):
            if len(filling[i]) < lam.part(i) and (i == 0 or len(filling[i - 1]) > len(filling[i])):
                filling[i].append(k)
                yield from place(k + 1)
                filling[i].pop()

    yield from place(1)


def count_ssyt(lam: Partition, content: Sequence[int] | Partition) -> int:
    """
    Kostka number K_{lam, content}.

    The content may be any composition; zero entries are allowed.
    """
    weights = tuple(int(w) for w in content)
    if any(w < 0 for w in weights):
        raise InvalidInputError(f"Content entries must be non-negative: {weights}")
    if sum(weights) != lam.size:
        raise InvalidInputError(
            f"Content {weights} has size {sum(weights)}, shape {lam} has size {lam.size}"
        )
    return _count_fillings(lam.parts, (), weights, lattice=False)


def hook_content(n: int, t: int) -> tuple[int, ...]:
    """The composition (n - t, 1^t)."""
    if t < 0 or t > n:
        raise InvalidInputError(f"Hook content needs 0 <= t <= n, got t={t}, n={n}")
    return (n - t,) + (1,) * t


@lru_cache(maxsize=262144)
def count_lr(lam: Partition, mu: Partition, nu: Partition) -> int:
    """Littlewood-Richardson coefficient c^lam_{mu, nu}."""
    if lam.size != mu.size + nu.size:
        return 0
    if not lam.contains(mu) or not lam.contains(nu):
        return 0
    shape = SkewShape(lam, mu)
    return _count_fillings(shape.outer.parts, shape.inner.parts, nu.parts, lattice=True)


@log_engine_call(log_args=True, log_result=False)
def lr_support(lam: Partition, n_a: int, n_b: int) -> list[tuple[Partition, Partition, int]]:
    """All (mu, nu) with mu |- n_a, nu |- n_b and c^lam_{mu, nu} > 0."""
    if lam.size != n_a + n_b:
        raise InvalidInputError(f"|lambda| = {lam.size} differs from {n_a} + {n_b}")
    support = []
    nus = partitions_fitting(n_b, lam)
    for mu in partitions_fitting(n_a, lam):
        for nu in nus:
            if not dominates(add_partitions(mu, nu), lam):
                continue
            c = count_lr(lam, mu, nu)
            if c > 0:
                support.append((mu, nu, c))
    return support


def induction_sum(mu: Partition, nu: Partition) -> int:
    """Sum over lam of c^lam_{mu, nu} * f_lam."""
    return sum(
        count_lr(lam, mu, nu) * count_syt(lam)
        for lam in enumerate_partitions(mu.size + nu.size)
    )


@log_engine_call()
def kostka_closed_form_threshold(tail: Partition, t: int, n_max: int) -> Optional[int]:
    """
    Smallest N such that K_{(N'-j, tail), (N'-t, 1^t)} = C(t, j) * f_tail for
    every N' in [N, n_max], where j = |tail|. None if it fails at n_max.
    """
    j = tail.size
    expected = math.comb(t, j) * count_syt(tail)
    n_min = max(t, j + tail.first_row)
    threshold = None
    for n in range(n_max, n_min - 1, -1):
        lam = Partition((n - j,) + tail.parts)
        if count_ssyt(lam, hook_content(n, t)) != expected:
            break
        threshold = n
    logger.debug(f"Kostka closed form for tail {tail}, t={t}: threshold {threshold}")
    return threshold
