"""
Poisson limits of the fixed-point count.

After (N/2b)(log N - c) shuffles the number of fixed cards converges to
Poisson(1 + e^c/2) when b < 1 (Poisson(1 + e^c) for the unbiased shuffle).
The moments of Fix are computed exactly from the spectrum: E[Fix^p] is the
trace of the step operator on the p-th tensor power of the permutation
module, which only sees lam with lam_1 >= N - p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from loguru import logger
from scipy.stats import poisson

from src.combinatorics.partitions import Partition, partitions_with_first_row
from src.combinatorics.tableaux import count_ssyt, count_syt, hook_content, lr_support
from src.constants import FIX_MOMENT_MAX_P, POISSON_TAIL_MASS
from src.exceptions import InvalidInputError, ResourceGuardError
from src.logger_decorator import log_engine_call
from src.shuffle.params import ShuffleParams
from src.shuffle.spectrum import eigenvalue


@dataclass(frozen=True)
class PoissonLaw:
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise InvalidInputError(f"Poisson rate must be positive, got {self.rate}")

    def pmf(self, k: int) -> float:
        return float(poisson.pmf(k, self.rate))

    def pmf_vector(self, tail: float = POISSON_TAIL_MASS) -> np.ndarray:
        return poisson_pmf_vector(self.rate, tail)

    def moment(self, p: int) -> float:
        """E[X^p] by Touchard's formula."""
        return sum(stirling2(p, t) * self.rate**t for t in range(p + 1))


def poisson_pmf_vector(rate: float, tail: float = POISSON_TAIL_MASS) -> np.ndarray:
    """pmf on 0..k_max, where the mass beyond k_max is below `tail`."""
    if not rate > 0:
        raise InvalidInputError(f"Poisson rate must be positive, got {rate}")
    k_max = int(poisson.isf(tail, rate)) + 1
    return poisson.pmf(np.arange(k_max + 1), rate)


def _aligned(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    size = max(len(p), len(q))
    return np.pad(p, (0, size - len(p))), np.pad(q, (0, size - len(q)))


def tv_discrete(p: np.ndarray, q: np.ndarray) -> float:
    """Total variation between two pmfs on 0, 1, 2, ..., zero-padded to one length."""
    p, q = _aligned(p, q)
    return 0.5 * float(np.abs(p - q).sum())


def hellinger_sq(p: np.ndarray, q: np.ndarray) -> float:
    """1 - sum sqrt(p q)."""
    p, q = _aligned(p, q)
    return max(0.0, 1.0 - float(np.sqrt(p * q).sum()))


def tv_poisson(r1: float, r2: float) -> float:
    return tv_discrete(poisson_pmf_vector(r1), poisson_pmf_vector(r2))


def poisson_lower_bound(x: float) -> float:
    """H^2(Poiss(1), Poiss(1 + x)) = 1 - exp(-(sqrt(1 + x) - 1)^2 / 2)."""
    if x < 0:
        raise InvalidInputError(f"Rate increment must be non-negative, got {x}")
    return 1 - math.exp(-0.5 * (math.sqrt(1 + x) - 1) ** 2)


def hellinger_lower_bound(c: float) -> float:
    """Asymptotic lower bound on d_TV at window position -c."""
    return poisson_lower_bound(math.exp(c) / 2)


def rt_limit_rate(c: float) -> float:
    return 1 + math.exp(c)


def limit_rate(c: float, b: float | Fraction = Fraction(1, 2)) -> float:
    """Rate of the limiting Poisson law of Fix at window position c."""
    if b >= 1:
        return rt_limit_rate(c)
    return 1 + math.exp(c) / 2


def conjectured_profile(c: float) -> float:
    """d_TV(Poiss(1 + e^c/2), Poiss(1)), the conjectured limit profile."""
    return tv_poisson(1 + math.exp(c) / 2, 1.0)


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling2(p: int, t: int) -> int:
    """Stirling number of the second kind S(p, t)."""
    if p < 0 or t < 0:
        raise InvalidInputError(f"Stirling numbers need p, t >= 0, got {p}, {t}")
    if t > p:
        return 0
    if p == 0:
        return 1
    if t == 0:
        return 0
    return t * stirling2(p - 1, t) + stirling2(p - 1, t - 1)


def multiplicity_mlp(lam: Partition, p: int) -> int:
    """
    Multiplicity m^lam_p of S^lam in the p-th tensor power of the permutation
    module. Zero unless lam_1 >= N - p.
    """
    if p < 0:
        raise InvalidInputError(f"Tensor power must be non-negative, got {p}")
    n = lam.size
    if lam.first_row < n - p:
        return 0
    return sum(stirling2(p, t) * count_ssyt(lam, hook_content(n, t)) for t in range(min(p, n) + 1))


@log_engine_call(log_result=True)
def fix_moment_exact(p: int, K: int, params: ShuffleParams, exact: bool = False) -> float | Fraction:
    """E[Fix^p] after K shuffles from the identity."""
    params.require_balanced()
    if p < 0 or K < 0:
        raise InvalidInputError(f"Need p >= 0 and K >= 0, got p={p}, K={K}")
    if p > FIX_MOMENT_MAX_P:
        raise ResourceGuardError(f"Moments are limited to p <= {FIX_MOMENT_MAX_P}, got {p}")
    n = params.N
    total = Fraction(0) if exact else 0.0
    for j in range(min(p, n - 1) + 1):
        for lam in partitions_with_first_row(n, n - j):
            m = multiplicity_mlp(lam, p)
            if m == 0:
                continue
            for mu, nu, c in lr_support(lam, params.n_a, params.n_b):
                weight = m * c * count_syt(mu) * count_syt(nu)
                eig = eigenvalue(params, lam, mu, nu)
                total += weight * (eig**K if exact else float(eig) ** K)
    logger.debug(f"E[Fix^{p}] after {K} shuffles of {params}: {float(total)}")
    return total


def fix_moment_limit(p: int, c: float, b: Optional[float | Fraction] = None) -> float:
    """Limit of E[Fix^p] at window position c; the biased rate unless b = 1 is given."""
    if p < 0:
        raise InvalidInputError(f"Moment order must be non-negative, got {p}")
    rate = 1 + math.exp(c) / 2 if b is None else limit_rate(c, b)
    return PoissonLaw(rate).moment(p)


@dataclass(frozen=True)
class MomentRow:
    n_cards: int
    p: int
    K: int
    exact: float
    limit: float

    @property
    def abs_gap(self) -> float:
        return abs(self.exact - self.limit)

    def to_row(self) -> dict:
        return {
            "N": self.n_cards,
            "p": self.p,
            "K": self.K,
            "exact": self.exact,
            "limit": self.limit,
            "abs_gap": self.abs_gap,
        }


@log_engine_call(log_result=False)
def moment_table(params: ShuffleParams, ps: Iterable[int], c: float) -> list[MomentRow]:
    """Exact moments at K = round((N/2b)(log N - c)) against their Poisson limit."""
    K = params.shuffles_at_rounded(c)
    b = None if params.b < 1 else params.b
    return [
        MomentRow(params.N, p, K, float(fix_moment_exact(p, K, params)), fix_moment_limit(p, c, b))
        for p in ps
    ]
