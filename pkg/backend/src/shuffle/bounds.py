"""
The l2 upper bound on the distance to uniform and its zone decomposition.

For a balanced deck, 4 d_TV(P^t, U)^2 <= sum over lam != (2n) of the error
term Omega_lam(t) = sum over the LR support of c f_lam f_mu f_nu |Eig|^{2t}.
The terms overflow doubles near n = 15, so every sum here is taken in log
space with scipy's logsumexp. The partitions of 2n are split into the Red,
Blue and Yellow zones of the (lam_1, lam_1*) plane; each zone has its own
estimate and the pieces are reported next to the exact zone sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from loguru import logger
from scipy.special import gammaln, logsumexp

from src.combinatorics.partitions import (
    Partition,
    conjugate,
    enumerate_partitions,
    partition_count,
)
from src.combinatorics.tableaux import count_syt
from src.constants import DEFAULT_EPSILON, HALF_SPLIT, RED_SPLIT, W_SPLIT_LOW
from src.exceptions import DomainViolationError, InvalidInputError
from src.logger_decorator import log_engine_call
from src.models.enums import ZONE_PRIORITY, WBlock, ZoneLabel
from src.shuffle import auxiliary
from src.shuffle.params import ShuffleParams, parse_rational
from src.shuffle.spectrum import eig_rt_envelope, eigenvalue, entries_for, spectrum_by_lambda

RED = Fraction(RED_SPLIT)
HALF = Fraction(HALF_SPLIT)
THIRD = Fraction(W_SPLIT_LOW)


@dataclass(frozen=True)
class ErrorTerms:
    """log(mult) and log|Eig| of every triple of one lam, aligned."""

    lam: Partition
    log_mult: np.ndarray
    log_eig: np.ndarray

    def log_omega(self, t: float) -> float:
        return float(logsumexp(_log_powers(self.log_mult, self.log_eig, t)))


def _log_powers(log_mult: np.ndarray, log_eig: np.ndarray, t: float) -> np.ndarray:
    if t == 0:
        return log_mult
    # zero eigenvalues carry log_eig = -inf and drop out
    return log_mult + 2 * t * log_eig


def _check_t(t: float) -> None:
    if t < 0:
        raise InvalidInputError(f"Time must be non-negative, got {t}")


def _terms_for(p: ShuffleParams, lam: Partition, entries) -> ErrorTerms:
    log_mult = np.array([math.log(e.mult) for e in entries])
    log_eig = np.array([math.log(abs(e.eig)) if e.eig != 0 else -np.inf for e in entries])
    return ErrorTerms(lam, log_mult, log_eig)


def _is_trivial(p: ShuffleParams, lam: Partition) -> bool:
    return lam.first_row == p.N


@lru_cache(maxsize=32)
def _error_terms(p: ShuffleParams, threads: int = 1) -> tuple[ErrorTerms, ...]:
    p.require_balanced()
    terms = tuple(
        _terms_for(p, lam, entries)
        for lam, entries in spectrum_by_lambda(p, threads)
        if not _is_trivial(p, lam)
    )
    logger.debug(f"Cached error terms of {p}: {len(terms)} partitions")
    return terms


@lru_cache(maxsize=32)
def _flat_terms(p: ShuffleParams, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    terms = _error_terms(p, threads)
    return (
        np.concatenate([term.log_mult for term in terms]),
        np.concatenate([term.log_eig for term in terms]),
    )


def _terms_of(p: ShuffleParams, lam: Partition) -> ErrorTerms:
    p.require_balanced()
    if lam.size != p.N:
        raise InvalidInputError(f"|lambda| = {lam.size} differs from N = {p.N}")
    if _is_trivial(p, lam):
        raise InvalidInputError("The trivial partition carries no error term")
    return _terms_for(p, lam, entries_for(p, lam))


# ---------------------------------------------------------------------------
# Error terms and the l2 bound
# ---------------------------------------------------------------------------

def log_omega(lam: Partition, t: float, p: ShuffleParams) -> float:
    _check_t(t)
    return _terms_of(p, lam).log_omega(t)


def omega(lam: Partition, t: float, p: ShuffleParams) -> float:
    """Omega_lam(t) as a float; may overflow to inf for large lam and small t."""
    return math.exp(log_omega(lam, t, p))


def omega_exact(lam: Partition, t: int, p: ShuffleParams) -> Fraction:
    """Omega_lam(t) in exact arithmetic, for integer t."""
    if t < 0 or int(t) != t:
        raise InvalidInputError(f"Exact error terms need an integer t >= 0, got {t}")
    p.require_balanced()
    if _is_trivial(p, lam):
        raise InvalidInputError("The trivial partition carries no error term")
    return sum((e.mult * e.eig ** (2 * int(t)) for e in entries_for(p, lam)), Fraction(0))


def log_total_error(t: float, p: ShuffleParams, threads: int = 1) -> float:
    _check_t(t)
    log_mult, log_eig = _flat_terms(p, threads)
    return float(logsumexp(_log_powers(log_mult, log_eig, t)))


def total_error(t: float, p: ShuffleParams, threads: int = 1) -> float:
    """Sum of Omega_lam(t) over every non-trivial lam."""
    return math.exp(log_total_error(t, p, threads))


def l2_upper_bound(t: float, p: ShuffleParams, threads: int = 1) -> float:
    """(1/2) sqrt(sum of Omega_lam(t)), an upper bound on d_TV(P^t, U)."""
    return 0.5 * math.exp(0.5 * log_total_error(t, p, threads))


@log_engine_call(log_result=False)
def l2_curve(p: ShuffleParams, times: Iterable[float], threads: int = 1) -> list[tuple[float, float]]:
    return [(t, l2_upper_bound(t, p, threads)) for t in times]


# ---------------------------------------------------------------------------
# Zones
# ---------------------------------------------------------------------------

def _yellow_threshold(p: ShuffleParams, eps: float) -> Fraction:
    return (p.a_star + parse_rational(eps)) * p.n


def _half_zone(long: int, short: int, n: int, yellow_from: Fraction, plus: bool) -> set[ZoneLabel]:
    """Blue and Yellow labels for the side where `long` is the larger statistic."""
    labels = set()
    if n <= long <= yellow_from:
        if HALF * n <= short <= n:
            labels.add(ZoneLabel.BLUE_I_PLUS if plus else ZoneLabel.BLUE_I_MINUS)
        if short <= HALF * n:
            labels.add(ZoneLabel.BLUE_II_PLUS if plus else ZoneLabel.BLUE_II_MINUS)
    top = 2 * n - 1 if plus else 2 * n
    if yellow_from <= long <= top:
        labels.add(ZoneLabel.YELLOW_PLUS if plus else ZoneLabel.YELLOW_MINUS)
    return labels


def _red_labels(row: int, col: int, n: int) -> set[ZoneLabel]:
    if row > n or col > n:
        return set()
    labels = set()
    if row <= RED * n and col <= RED * n:
        labels.add(ZoneLabel.RED_I)
    for long, short in ((row, col), (col, row)):
        if RED * n <= long <= n:
            if short <= HALF * n:
                labels.add(ZoneLabel.RED_II)
            if HALF * n <= short <= RED * n:
                labels.add(ZoneLabel.RED_III)
    if RED * n <= row <= n and RED * n <= col <= n:
        labels.add(ZoneLabel.RED_IV)
    return labels


def classify_zone(lam: Partition, p: ShuffleParams, eps: float = DEFAULT_EPSILON) -> frozenset[ZoneLabel]:
    """Every zone whose closed region contains (lam_1, lam_1*)."""
    n = p.n
    if lam.size != 2 * n:
        raise InvalidInputError(f"|lambda| = {lam.size} differs from 2n = {2 * n}")
    if _is_trivial(p, lam):
        return frozenset({ZoneLabel.TRIVIAL})
    row, col = lam.first_row, lam.first_column
    yellow_from = _yellow_threshold(p, eps)
    labels = _red_labels(row, col, n)
    labels |= _half_zone(row, col, n, yellow_from, plus=True)
    labels |= _half_zone(col, row, n, yellow_from, plus=False)
    return frozenset(labels)


def zone_of(lam: Partition, p: ShuffleParams, eps: float = DEFAULT_EPSILON) -> ZoneLabel:
    """The single zone lam is charged to: Yellow > Blue > Red, + before -."""
    labels = classify_zone(lam, p, eps)
    if ZoneLabel.TRIVIAL in labels:
        return ZoneLabel.TRIVIAL
    for label in ZONE_PRIORITY:
        if label in labels:
            return label
    raise InvalidInputError(f"{lam} falls outside every zone")


@log_engine_call(log_result=False)
def split_by_zone(p: ShuffleParams, eps: float = DEFAULT_EPSILON) -> dict[ZoneLabel, list[Partition]]:
    """Partition the non-trivial lam |- 2n into zones, canonical order inside each."""
    zones: dict[ZoneLabel, list[Partition]] = {label: [] for label in ZONE_PRIORITY}
    for lam in enumerate_partitions(p.N):
        if not _is_trivial(p, lam):
            zones[zone_of(lam, p, eps)].append(lam)
    return zones


@log_engine_call(log_result=True)
def zone_sums(t: float, p: ShuffleParams, eps: float = DEFAULT_EPSILON, threads: int = 1) -> dict[ZoneLabel, float]:
    """Sum of Omega_lam(t) over each zone; the values add up to total_error."""
    _check_t(t)
    by_lam = {term.lam: term for term in _error_terms(p, threads)}
    sums = {}
    for label, lams in split_by_zone(p, eps).items():
        if not lams:
            sums[label] = 0.0
            continue
        logs = [by_lam[lam].log_omega(t) for lam in lams]
        sums[label] = math.exp(float(logsumexp(logs)))
    return sums


def essential_tool_bound(
    lams: Iterable[Partition], t: float, p: ShuffleParams, exact: bool = False
) -> float | Fraction:
    """
    Sum over lam of f_lam^2 times the largest |Eig|^{2t} in its LR support,
    which dominates the sum of Omega_lam(t) over the same lams.
    """
    _check_t(t)
    if exact:
        if int(t) != t:
            raise InvalidInputError(f"Exact evaluation needs an integer t, got {t}")
        total = Fraction(0)
        for lam in lams:
            top = max(abs(e.eig) for e in entries_for(p, lam))
            total += count_syt(lam) ** 2 * top ** (2 * int(t))
        return total
    logs = []
    for lam in lams:
        terms = _terms_of(p, lam)
        top = float(np.max(terms.log_eig))
        logs.append(2 * math.log(count_syt(lam)) + (0.0 if t == 0 else 2 * t * top))
    return math.exp(float(logsumexp(logs))) if logs else 0.0


# ---------------------------------------------------------------------------
# Yellow zone
# ---------------------------------------------------------------------------

def main_term_envelope(j: int, p: ShuffleParams) -> Fraction:
    """1 - bj/n + (ab/2n^2) j(j-1), valid for 1 <= j < n/a."""
    n = p.n
    if j < 1 or j * p.a >= n:
        raise DomainViolationError(f"Main-term envelope needs 1 <= j < n/a = {float(n / p.a)}, got j={j}")
    return 1 - p.b * j / n + p.a * p.b * j * (j - 1) / Fraction(2 * n * n)


def yellow_j_range(p: ShuffleParams) -> range:
    """The j with 1 <= j < n/a."""
    limit = math.ceil(p.n / p.a)
    return range(1, limit)


def log_yellow_term_bound(j: int, t: float, p: ShuffleParams) -> float:
    _check_t(t)
    envelope = float(main_term_envelope(j, p))
    return (
        math.log(partition_count(j))
        - float(gammaln(j + 1))
        + 2 * j * math.log(2 * p.n)
        + 2 * t * math.log(envelope)
    )


def yellow_term_bound(j: int, t: float, p: ShuffleParams) -> float:
    """(p(j)/j!) exp(2j log 2n) envelope(j)^{2t}, a bound on the lam_1 = 2n - j slice."""
    return math.exp(log_yellow_term_bound(j, t, p))


def sign_term(t: float, p: ShuffleParams) -> float:
    """|Eig|^{2t} of the sign triple (1^{2n}, 1^n, 1^n)."""
    n = p.n
    eig = eigenvalue(p, Partition.column(2 * n), Partition.column(n), Partition.column(n))
    return abs(float(eig)) ** (2 * t)


@log_engine_call(log_result=True)
def yellow_sum_bound(t: float, p: ShuffleParams) -> float:
    """Twice the sum of the term bounds (both sides) plus the sign term."""
    logs = [log_yellow_term_bound(j, t, p) for j in yellow_j_range(p)]
    body = 2 * math.exp(float(logsumexp(logs))) if logs else 0.0
    return body + sign_term(t, p)


# ---------------------------------------------------------------------------
# Red zone, measured against the closed-form envelopes
# ---------------------------------------------------------------------------

def classify_w(mu: Partition, n: int) -> WBlock:
    """W1: mu_1, mu_1* <= n/3; W2: both <= n/2; W3: both <= 0.7n."""
    if mu.size != n:
        raise InvalidInputError(f"|mu| = {mu.size} differs from n = {n}")
    widest = max(mu.first_row, mu.first_column)
    if widest <= THIRD * n:
        return WBlock.W1
    if widest <= HALF * n:
        return WBlock.W2
    if widest <= RED * n:
        return WBlock.W3
    raise DomainViolationError(f"{mu} has a row or column longer than 0.7n = {float(RED * n)}")


def _w_index(block: WBlock) -> int:
    return int(block.value[1])


@log_engine_call(log_result=False)
def lambda_ij_slack(p: ShuffleParams) -> dict[str, dict]:
    """
    Largest eig_rt_envelope over mu in W_i, nu in W_j against the closed-form
    block bound. A positive slack is the finite-n excess over the bound.
    """
    n = p.n
    blocks: dict[int, list[Partition]] = {1: [], 2: [], 3: []}
    for mu in enumerate_partitions(n):
        if max(mu.first_row, mu.first_column) <= RED * n:
            blocks[_w_index(classify_w(mu, n))].append(mu)
    report = {}
    for i in range(1, 4):
        for j in range(i, 4):
            bound = auxiliary.lambda_ij_bound(i, j, float(p.b))
            envelopes = [
                float(eig_rt_envelope(p, mu, nu))
                for mu in blocks[i]
                for nu in blocks[j]
            ] + [
                float(eig_rt_envelope(p, mu, nu))
                for mu in blocks[j]
                for nu in blocks[i]
            ]
            top: Optional[float] = max(envelopes) if envelopes else None
            report[f"{i}{j}"] = {
                "max_envelope": top,
                "bound": bound,
                "slack": None if top is None else top - bound,
            }
    return report


def _max_abs_eig(p: ShuffleParams, lam: Partition) -> Fraction:
    return max(abs(e.eig) for e in entries_for(p, lam))


@log_engine_call(log_result=True)
def q_r_slack(p: ShuffleParams, eps: float = DEFAULT_EPSILON) -> dict:
    """
    max |Eig| minus the Q_R envelope on the Red III and IV zones. The envelope
    only holds up to O(1/n), so the excess is returned, never asserted.
    """
    n, b = p.n, float(p.b)
    worst, worst_lam = None, None
    for label in (ZoneLabel.RED_III, ZoneLabel.RED_IV):
        for lam in split_by_zone(p, eps)[label]:
            x, y = lam.first_row / n, lam.first_column / n
            envelope = max(auxiliary.q_r(x, y, b), auxiliary.q_r(y, x, b))
            slack = float(_max_abs_eig(p, lam)) - envelope
            if worst is None or slack > worst:
                worst, worst_lam = slack, lam
    return {
        "n": n,
        "max_slack": worst,
        "scaled_slack": None if worst is None else worst * n,
        "worst_lambda": None if worst_lam is None else str(worst_lam),
    }


@log_engine_call(log_result=True)
def blue_floor_slack(p: ShuffleParams, eps: float = DEFAULT_EPSILON) -> dict[str, Optional[float]]:
    """
    Smallest Eig minus the closed-form floor on Blue I and Blue II. Negative
    values are the O(1/n) excess at this n.
    """
    b = float(p.b)
    floors = {
        "BlueI": (auxiliary.blue_one_lower_bound(b), (ZoneLabel.BLUE_I_PLUS, ZoneLabel.BLUE_I_MINUS)),
        "BlueII": (auxiliary.blue_two_lower_bound(b), (ZoneLabel.BLUE_II_PLUS, ZoneLabel.BLUE_II_MINUS)),
    }
    zones = split_by_zone(p, eps)
    report = {}
    for name, (floor, labels) in floors.items():
        eigs = [float(e.eig) for label in labels for lam in zones[label] for e in entries_for(p, lam)]
        report[name] = min(eigs) - floor if eigs else None
    return report


def conjugate_eigenvalue_sum(p: ShuffleParams, lam: Partition, mu: Partition, nu: Partition) -> Fraction:
    """Eig(lam, mu, nu) + Eig(lam*, mu*, nu*), which equals (a^2 + b^2)/(2n)."""
    return eigenvalue(p, lam, mu, nu) + eigenvalue(p, conjugate(lam), conjugate(mu), conjugate(nu))
