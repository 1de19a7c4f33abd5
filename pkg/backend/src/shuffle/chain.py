"""
The biased random transposition chain on S_N.

A deck is a one-line array x with x[position] = card. One shuffle draws two
cards i, j independently from the biased measure and swaps them, i.e. the
deck moves from x to t_ij o x (left multiplication, values are permuted).
Distributions over S_N are dense vectors indexed by Lehmer rank, which for
itertools.permutations(range(N)) is the enumeration order.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from tqdm import tqdm

from src.constants import (
    DEFAULT_SEED,
    EVOLVE_MAX_N,
    EXACT_EVOLVE_MAX_N,
    MC_BATCH_SIZE,
    ORACLE_MAX_N,
)
from src.exceptions import InvalidInputError, ResourceGuardError
from src.logger_decorator import log_engine_call
from src.shuffle.bounds import l2_upper_bound
from src.shuffle.limits import tv_discrete
from src.shuffle.params import ShuffleParams

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class StepMeasure:
    """Law of one shuffle: identity mass plus one weight per pair i < j."""

    n_cards: int
    id_mass: Fraction
    weights: dict[tuple[int, int], Fraction]

    def total(self) -> Fraction:
        return self.id_mass + sum(self.weights.values(), Fraction(0))

    def pairs(self) -> list[tuple[int, int]]:
        return list(self.weights)

    def weight(self, i: int, j: int) -> Fraction:
        return self.weights[(min(i, j), max(i, j))]


def step_measure(p: ShuffleParams) -> StepMeasure:
    card = [p.card_weight(k) for k in range(p.N)]
    id_mass = sum((w * w for w in card), Fraction(0))
    weights = {(i, j): 2 * card[i] * card[j] for i, j in combinations(range(p.N), 2)}
    return StepMeasure(p.N, id_mass, weights)


def card_probabilities(p: ShuffleParams) -> np.ndarray:
    return np.array([float(p.card_weight(k)) for k in range(p.N)])


# ---------------------------------------------------------------------------
# Permutation indexing
# ---------------------------------------------------------------------------

def rank_permutation(perm: Sequence[int]) -> int:
    """Lehmer rank of a permutation of 0..N-1."""
    n = len(perm)
    rank = 0
    for i in range(n):
        smaller = sum(1 for k in range(i + 1, n) if perm[k] < perm[i])
        rank += smaller * math.factorial(n - 1 - i)
    return rank


def unrank_permutation(rank: int, n: int) -> tuple[int, ...]:
    if not 0 <= rank < math.factorial(n):
        raise InvalidInputError(f"Rank {rank} out of range for N={n}")
    remaining = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        digit, rank = divmod(rank, math.factorial(i))
        out.append(remaining.pop(digit))
    return tuple(out)


def rank_many(perms: np.ndarray) -> np.ndarray:
    """Vectorized Lehmer rank of the rows of `perms`."""
    n = perms.shape[1]
    ranks = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (perms[:, i + 1:] < perms[:, [i]]).sum(axis=1)
        ranks += smaller * math.factorial(n - 1 - i)
    return ranks


@lru_cache(maxsize=16)
def all_permutations(n: int) -> np.ndarray:
    """Every permutation of 0..N-1 as a read-only (N!, N) array, row r has rank r."""
    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(math.factorial(n), n)
    perms.flags.writeable = False
    return perms


@lru_cache(maxsize=16)
def left_action_table(n: int) -> np.ndarray:
    """table[k, r] = rank of t_k o perm_r, pairs t_k in combinations order."""
    perms = all_permutations(n)
    rows = []
    for i, j in combinations(range(n), 2):
        moved = perms.copy()
        moved[perms == i] = j
        moved[perms == j] = i
        rows.append(rank_many(moved))
    table = np.array(rows, dtype=np.int64).reshape(len(rows), len(perms))
    table.flags.writeable = False
    return table


def count_fixed_points(perm: Sequence[int]) -> int:
    perm = np.asarray(perm)
    return int(np.count_nonzero(perm == np.arange(len(perm))))


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

@dataclass
class GroupDistribution:
    """Probability vector over S_N indexed by Lehmer rank (float or Fraction entries)."""

    n_cards: int
    probs: np.ndarray

    def __post_init__(self):
        if len(self.probs) != math.factorial(self.n_cards):
            raise InvalidInputError(
                f"Distribution on S_{self.n_cards} needs {math.factorial(self.n_cards)} entries, got {len(self.probs)}"
            )
        if self.exact:
            total = sum(self.probs, Fraction(0))
            if total != 1 or any(x < 0 for x in self.probs):
                raise InvalidInputError("Exact distribution must be non-negative and sum to 1")
        elif np.any(self.probs < 0) or abs(math.fsum(self.probs) - 1.0) > PROBABILITY_TOLERANCE:
            raise InvalidInputError("Distribution must be non-negative and sum to 1")

    @property
    def exact(self) -> bool:
        return self.probs.dtype == object

    def as_float(self) -> np.ndarray:
        return self.probs.astype(float) if self.exact else self.probs

    def to_exact(self) -> "GroupDistribution":
        if self.exact:
            return self
        return GroupDistribution(self.n_cards, np.array([Fraction(x) for x in self.probs], dtype=object))


def point_mass(n: int, rank: int = 0, exact: bool = False) -> GroupDistribution:
    size = math.factorial(n)
    if exact:
        probs = np.array([Fraction(0)] * size, dtype=object)
        probs[rank] = Fraction(1)
    else:
        probs = np.zeros(size)
        probs[rank] = 1.0
    return GroupDistribution(n, probs)


def uniform(n: int, exact: bool = False) -> GroupDistribution:
    size = math.factorial(n)
    if exact:
        return GroupDistribution(n, np.array([Fraction(1, size)] * size, dtype=object))
    return GroupDistribution(n, np.full(size, 1.0 / size))


def _evolve_guard(dist: GroupDistribution) -> None:
    if dist.n_cards > EVOLVE_MAX_N:
        raise ResourceGuardError(f"Exact evolution is limited to N <= {EVOLVE_MAX_N}, got N={dist.n_cards}")
    if dist.exact and dist.n_cards > EXACT_EVOLVE_MAX_N:
        raise ResourceGuardError(
            f"Rational evolution is limited to N <= {EXACT_EVOLVE_MAX_N}, got N={dist.n_cards}"
        )


def _step(probs: np.ndarray, m: StepMeasure, table: np.ndarray, weights: list) -> np.ndarray:
    new = probs * m.id_mass if probs.dtype == object else probs * float(m.id_mass)
    for k, w in enumerate(weights):
        new = new + w * probs[table[k]]
    return new


def evolve(
    dist: GroupDistribution,
    m: StepMeasure,
    t: int,
    progress: bool = False,
) -> GroupDistribution:
    """
    t-fold convolution with the step measure.

    new[x] = id_mass * old[x] + sum over pairs of w(tau) * old[tau o x]
    """
    if t < 0:
        raise InvalidInputError(f"Number of steps must be non-negative, got {t}")
    if m.n_cards != dist.n_cards:
        raise InvalidInputError(f"Step measure on {m.n_cards} cards applied to S_{dist.n_cards}")
    _evolve_guard(dist)
    table = left_action_table(dist.n_cards)
    pairs = list(combinations(range(dist.n_cards), 2))
    weights = [m.weights[pair] for pair in pairs]
    if not dist.exact:
        weights = [float(w) for w in weights]
    probs = dist.probs
    for _ in tqdm(range(t), disable=not progress, desc="evolve"):
        probs = _step(probs, m, table, weights)
    if not dist.exact:
        # renormalize away float rounding drift
        probs = probs / math.fsum(probs)
    return GroupDistribution(dist.n_cards, probs)


@log_engine_call(log_result=False)
def evolve_exact(dist: GroupDistribution, m: StepMeasure, t: int) -> GroupDistribution:
    """Rational evolution for N <= 4."""
    return evolve(dist.to_exact(), m, t)


def tv_to_uniform(dist: GroupDistribution) -> float:
    size = math.factorial(dist.n_cards)
    if dist.exact:
        target = Fraction(1, size)
        return float(sum((abs(x - target) for x in dist.probs), Fraction(0)) / 2)
    return float(0.5 * np.abs(dist.probs - 1.0 / size).sum())


@log_engine_call(log_result=False)
def transition_matrix(p: ShuffleParams, exact: bool = False) -> np.ndarray:
    """Explicit N! x N! kernel, P[x, y] = probability of moving from x to y."""
    if p.N > ORACLE_MAX_N:
        raise ResourceGuardError(f"Explicit kernel is limited to N <= {ORACLE_MAX_N}, got N={p.N}")
    m = step_measure(p)
    table = left_action_table(p.N)
    size = math.factorial(p.N)
    rows = np.arange(size)
    if exact:
        P = np.full((size, size), Fraction(0), dtype=object)
        P[rows, rows] = m.id_mass
    else:
        P = np.zeros((size, size))
        P[rows, rows] = float(m.id_mass)
    for k, pair in enumerate(combinations(range(p.N), 2)):
        w = m.weights[pair]
        P[rows, table[k]] += w if exact else float(w)
    return P


@log_engine_call(log_result=False)
def numeric_spectrum_oracle(p: ShuffleParams) -> list[float]:
    """Eigenvalues of the explicit symmetric kernel, sorted descending."""
    eig = np.linalg.eigvalsh(transition_matrix(p))
    return sorted(eig.tolist(), reverse=True)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

def _batches(samples: int) -> list[int]:
    full, rest = divmod(samples, MC_BATCH_SIZE)
    return [MC_BATCH_SIZE] * full + ([rest] if rest else [])


def _run_batch(cdf: np.ndarray, n: int, t: int, size: int, seq: np.random.SeedSequence) -> np.ndarray:
    """Positions of each card (the inverse deck) after t shuffles, one row per walk."""
    rng = np.random.default_rng(seq)
    where = np.tile(np.arange(n, dtype=np.int32), (size, 1))
    rows = np.arange(size)
    for _ in range(t):
        i = np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), n - 1)
        j = np.minimum(np.searchsorted(cdf, rng.random(size), side="right"), n - 1)
        held = where[rows, i].copy()
        where[rows, i] = where[rows, j]
        where[rows, j] = held
    return where


def _fan_out(p: ShuffleParams, t: int, samples: int, seed: int, threads: int, reduce, progress: bool):
    if t < 0 or samples < 0:
        raise InvalidInputError(f"Need t >= 0 and samples >= 0, got t={t}, samples={samples}")
    sizes = _batches(samples)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    cdf = np.cumsum(card_probabilities(p))
    cdf[-1] = 1.0

    def work(k: int):
        return reduce(_run_batch(cdf, p.N, t, sizes[k], seqs[k]))

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        results = list(tqdm(executor.map(work, range(len(sizes))), total=len(sizes), disable=not progress, desc="walks"))
    logger.debug(f"Sampled {samples} walks of length {t} for {p} in {len(sizes)} batches")
    return results


@log_engine_call(log_result=False)
def sample_walks(
    p: ShuffleParams,
    t: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    progress: bool = False,
) -> np.ndarray:
    """(samples, N) array of decks after t shuffles from the identity."""
    batches = _fan_out(p, t, samples, seed, threads, lambda where: np.argsort(where, axis=1), progress)
    if not batches:
        return np.empty((0, p.N), dtype=np.int64)
    return np.concatenate(batches)


def sample_walk(p: ShuffleParams, t: int, rng_seed: int = DEFAULT_SEED) -> tuple[int, ...]:
    return tuple(int(x) for x in sample_walks(p, t, 1, rng_seed)[0])


@log_engine_call(log_result=False)
def sample_fixed_points(
    p: ShuffleParams,
    t: int,
    samples: int,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    progress: bool = False,
) -> np.ndarray:
    """Fixed-point counts of `samples` walks; a deck and its inverse share fixed points."""

    def fixed(where: np.ndarray) -> np.ndarray:
        return np.count_nonzero(where == np.arange(p.N), axis=1)

    batches = _fan_out(p, t, samples, seed, threads, fixed, progress)
    if not batches:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(batches)


# ---------------------------------------------------------------------------
# Fixed points
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _fixed_point_counts(n: int) -> np.ndarray:
    counts = np.count_nonzero(all_permutations(n) == np.arange(n), axis=1)
    counts.flags.writeable = False
    return counts


def fixed_point_law(dist: GroupDistribution) -> np.ndarray:
    """Law of Fix under dist, indexed 0..N (object array of Fractions when exact)."""
    counts = _fixed_point_counts(dist.n_cards)
    if dist.exact:
        law = np.array([Fraction(0)] * (dist.n_cards + 1), dtype=object)
        for k, x in zip(counts, dist.probs):
            law[k] += x
        return law
    return np.bincount(counts, weights=dist.probs, minlength=dist.n_cards + 1)


@lru_cache(maxsize=64)
def _derangements(m: int) -> int:
    if m == 0:
        return 1
    if m == 1:
        return 0
    return (m - 1) * (_derangements(m - 1) + _derangements(m - 2))


def uniform_fixed_point_law(n: int) -> np.ndarray:
    """Exact law of Fix for a uniform permutation, as floats."""
    total = math.factorial(n)
    return np.array([float(Fraction(math.comb(n, k) * _derangements(n - k), total)) for k in range(n + 1)])


def fixed_point_histogram(fix_counts: np.ndarray, n_cards: int) -> np.ndarray:
    return np.bincount(np.asarray(fix_counts, dtype=np.int64), minlength=n_cards + 1)


# ---------------------------------------------------------------------------
# Mixing curve
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixingRow:
    t: int
    tv_exact: float
    l2_bound: Optional[float]
    poisson_lower: float

    def to_row(self) -> dict:
        return {
            "t": self.t,
            "tv_exact": self.tv_exact,
            "l2_bound": self.l2_bound,
            "poisson_lower": self.poisson_lower,
        }


@log_engine_call(log_result=False)
def mixing_curve(p: ShuffleParams, t_max: int, t_min: int = 0, progress: bool = False) -> list[MixingRow]:
    """
    Exact TV to uniform for t in [t_min, t_max] next to the l2 upper bound
    and the fixed-point lower bound. The l2 bound needs a balanced deck and
    is None otherwise.
    """
    if t_min < 0 or t_max < t_min:
        raise InvalidInputError(f"Need 0 <= t_min <= t_max, got {t_min}, {t_max}")
    m = step_measure(p)
    dist = evolve(point_mass(p.N), m, t_min)
    uniform_law = uniform_fixed_point_law(p.N)
    rows = []
    for t in tqdm(range(t_min, t_max + 1), disable=not progress, desc="mix-curve"):
        if t > t_min:
            dist = evolve(dist, m, 1)
        l2 = l2_upper_bound(t, p) if p.is_balanced else None
        rows.append(MixingRow(t, tv_to_uniform(dist), l2, tv_discrete(fixed_point_law(dist), uniform_law)))
    return rows
