"""
Exact spectrum of the biased random transposition kernel.

Every Littlewood-Richardson triple (lam, mu, nu) with lam |- N, mu |- n_a,
nu |- n_b and c^lam_{mu,nu} > 0 contributes the rational eigenvalue

    (a^2 n_a + b^2 n_b)/N^2 + 2(a^2 - ab)/N^2 Diag(mu)
        + 2(b^2 - ab)/N^2 Diag(nu) + 2ab/N^2 Diag(lam)

with multiplicity c^lam_{mu,nu} f_lam f_mu f_nu.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from loguru import logger

from src.combinatorics.partitions import (
    Partition,
    conjugate,
    diag_index,
    enumerate_partitions,
    inner_product,
)
from src.combinatorics.tableaux import count_syt, lr_support
from src.constants import SPECTRUM_MAX_N
from src.exceptions import InvalidInputError, ResourceGuardError
from src.logger_decorator import log_engine_call
from src.shuffle.params import ShuffleParams


@dataclass(frozen=True)
class SpectrumEntry:
    lam: Partition
    mu: Partition
    nu: Partition
    eig: Fraction
    lr: int
    mult: int

    def to_row(self) -> dict:
        return {
            "lambda": str(self.lam),
            "mu": str(self.mu),
            "nu": str(self.nu),
            "eig_num": self.eig.numerator,
            "eig_den": self.eig.denominator,
            "mult": self.mult,
        }


def _check_sizes(p: ShuffleParams, lam: Partition, mu: Partition, nu: Partition) -> None:
    if lam.size != p.N or mu.size != p.n_a or nu.size != p.n_b:
        raise InvalidInputError(
            f"Sizes |lambda|={lam.size}, |mu|={mu.size}, |nu|={nu.size} "
            f"do not match N={p.N}, n_a={p.n_a}, n_b={p.n_b}"
        )


def identity_mass(p: ShuffleParams) -> Fraction:
    return (p.a**2 * p.n_a + p.b**2 * p.n_b) / Fraction(p.N**2)


def eigenvalue(p: ShuffleParams, lam: Partition, mu: Partition, nu: Partition) -> Fraction:
    _check_sizes(p, lam, mu, nu)
    a, b, n2 = p.a, p.b, Fraction(p.N**2)
    return (
        identity_mass(p)
        + 2 * (a * a - a * b) / n2 * diag_index(mu)
        + 2 * (b * b - a * b) / n2 * diag_index(nu)
        + 2 * a * b / n2 * diag_index(lam)
    )


def entries_for(p: ShuffleParams, lam: Partition) -> list[SpectrumEntry]:
    """Spectrum entries of one lam, in lr_support order."""
    f_lam = count_syt(lam)
    return [
        SpectrumEntry(lam, mu, nu, eigenvalue(p, lam, mu, nu), c, c * f_lam * count_syt(mu) * count_syt(nu))
        for mu, nu, c in lr_support(lam, p.n_a, p.n_b)
    ]


def _guard(p: ShuffleParams) -> None:
    if p.N > SPECTRUM_MAX_N:
        raise ResourceGuardError(f"Spectrum enumeration is limited to N <= {SPECTRUM_MAX_N}, got N={p.N}")


def spectrum_by_lambda(
    p: ShuffleParams, threads: int = 1
) -> Iterator[tuple[Partition, list[SpectrumEntry]]]:
    """Yield (lam, entries) for every lam |- N in canonical order."""
    _guard(p)
    lams = enumerate_partitions(p.N)
    if threads <= 1:
        for lam in lams:
            yield lam, entries_for(p, lam)
        return
    with ThreadPoolExecutor(max_workers=threads) as executor:
        yield from zip(lams, executor.map(lambda lam: entries_for(p, lam), lams))


@log_engine_call(log_result=True)
def full_spectrum(p: ShuffleParams, threads: int = 1) -> list[SpectrumEntry]:
    entries = [e for _, group in spectrum_by_lambda(p, threads) for e in group]
    logger.debug(f"Spectrum of {p}: {len(entries)} triples")
    return entries


def rt_eigenvalue(mu: Partition, n: int) -> Fraction:
    """Classical random transposition eigenvalue D_mu = 1/n + 2 Diag(mu)/n^2."""
    if mu.size != n:
        raise InvalidInputError(f"|mu| = {mu.size} differs from n = {n}")
    return Fraction(1, n) + Fraction(2 * diag_index(mu), n * n)


def eig_rt_envelope(p: ShuffleParams, mu: Partition, nu: Partition) -> Fraction:
    """
    Upper bound on |Eig| for every lam with c^lam_{mu,nu} > 0:

        (a^2/4)|D_mu| + (b^2/4)|D_nu| + (ab/2) max(<mu,nu>, <mu*,nu*>)/n^2
    """
    n = p.n
    if mu.size != n or nu.size != n:
        raise InvalidInputError(f"Envelope needs |mu| = |nu| = {n}, got {mu.size} and {nu.size}")
    a, b = p.a, p.b
    cross = max(inner_product(mu, nu), inner_product(conjugate(mu), conjugate(nu)))
    return (
        a * a / 4 * abs(rt_eigenvalue(mu, n))
        + b * b / 4 * abs(rt_eigenvalue(nu, n))
        + a * b / 2 * Fraction(cross, n * n)
    )


def main_term_sandwich(p: ShuffleParams, j: int) -> tuple[Fraction, Fraction]:
    """Bounds 1 - 2aj/N <= Eig <= 1 - 2bj/N + 2ab j(j-1)/N^2 for lam_1 = N - j."""
    N = p.N
    lower = 1 - 2 * p.a * j / N
    upper = 1 - 2 * p.b * j / N + 2 * p.a * p.b * j * (j - 1) / Fraction(N * N)
    return lower, upper


def power_trace(p: ShuffleParams, k: int, entries: Optional[list[SpectrumEntry]] = None) -> Fraction:
    """Sum of mult * eig^k, the trace of P^k."""
    if k < 0:
        raise InvalidInputError(f"Power must be non-negative, got {k}")
    entries = full_spectrum(p) if entries is None else entries
    return sum((e.mult * e.eig**k for e in entries), Fraction(0))


def first_moment_closed_form(p: ShuffleParams, K: int) -> Fraction:
    """
    Mean number of fixed points after K shuffles, from the four triples of
    the permutation module S^(N) + S^(N-1,1).
    """
    if K < 0:
        raise InvalidInputError(f"Number of shuffles must be non-negative, got {K}")
    N, a, b = p.N, p.a, p.b
    return (
        1
        + (p.n_a - 1) * (1 - 2 * a / N) ** K
        + (p.n_b - 1) * (1 - 2 * b / N) ** K
        + (1 - 2 * a * b / N) ** K
    )


def total_multiplicity(entries: list[SpectrumEntry]) -> int:
    return sum(e.mult for e in entries)


def expected_trace(p: ShuffleParams) -> Fraction:
    """N! times the identity mass, the trace of P."""
    return math.factorial(p.N) * identity_mass(p)
