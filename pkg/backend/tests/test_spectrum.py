"""
Tests for the exact spectrum of the biased random transposition kernel.
"""
import math
from fractions import Fraction
from itertools import combinations

import pytest

from src.combinatorics.partitions import Partition, conjugate, enumerate_partitions
from src.exceptions import InvalidInputError, ResourceGuardError, UnbalancedSplitError
from src.shuffle.params import ShuffleParams
from src.shuffle.spectrum import (
    eig_rt_envelope,
    eigenvalue,
    entries_for,
    expected_trace,
    first_moment_closed_form,
    full_spectrum,
    identity_mass,
    main_term_sandwich,
    power_trace,
    rt_eigenvalue,
    spectrum_by_lambda,
    total_multiplicity,
)
from tests.base_test import sign_eigenvalue

P = Partition.of
HALF = Fraction(1, 2)


def _trace_of_square(p: ShuffleParams) -> Fraction:
    """N! * sum over g of P(g)^2, computed from the card weights alone."""
    w = [p.card_weight(k) for k in range(p.N)]
    id_mass = sum(x * x for x in w)
    pair_sq = sum((2 * w[i] * w[j]) ** 2 for i, j in combinations(range(p.N), 2))
    return math.factorial(p.N) * (id_mass**2 + pair_sq)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("b", ["1", "1/2", "1/4", "0.9"])
def test_trivial_and_sign_eigenvalues(n, b):
    """Test that the trivial triple gives 1 and the sign triple -1 + (a^2 + b^2)/(2n)."""
    p = ShuffleParams.balanced(n, b)
    assert eigenvalue(p, P(2 * n), P(n), P(n)) == 1
    col = Partition.column
    assert eigenvalue(p, col(2 * n), col(n), col(n)) == sign_eigenvalue(n, p.b)


@pytest.mark.unit
def test_identity_mass():
    """Test the probability of drawing the same card twice."""
    p = ShuffleParams.balanced(2, HALF)
    # a = 3/2: (9/4 * 2 + 1/4 * 2) / 16
    assert identity_mass(p) == Fraction(5, 16)
    assert identity_mass(ShuffleParams(2, 3, 1)) == Fraction(1, 5)


@pytest.mark.unit
@pytest.mark.parametrize("n_a,n_b", [(1, 2), (2, 3), (3, 1)])
def test_unbiased_reduces_to_random_transpositions(n_a, n_b):
    """Test that b = 1 gives the classical eigenvalue of lam for every triple."""
    p = ShuffleParams(n_a, n_b, 1)
    for e in full_spectrum(p):
        assert e.eig == rt_eigenvalue(e.lam, p.N)


@pytest.mark.unit
def test_eigenvalue_rejects_wrong_sizes(balanced_half):
    """Test that the triple must match the deck split."""
    with pytest.raises(InvalidInputError):
        eigenvalue(balanced_half, P(3, 1), P(3), P(1))


@pytest.mark.unit
def test_spectrum_row_serialization(balanced_half):
    """Test that rows carry the reduced numerator and denominator."""
    row = entries_for(balanced_half, P(4))[0].to_row()
    assert row == {"lambda": "4", "mu": "2", "nu": "2", "eig_num": 1, "eig_den": 1, "mult": 1}


@pytest.mark.unit
def test_spectrum_guard():
    """Test that very large decks are refused."""
    with pytest.raises(ResourceGuardError):
        full_spectrum(ShuffleParams.balanced(21, 1))


@pytest.mark.unit
def test_multiplicities_add_up(oracle_params):
    """Test that the multiplicities sum to N!."""
    assert total_multiplicity(full_spectrum(oracle_params)) == math.factorial(oracle_params.N)


@pytest.mark.unit
@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("b", ["1", "1/3"])
def test_multiplicities_add_up_larger(n, b):
    """Test the multiplicity sum on decks too large for the explicit kernel."""
    p = ShuffleParams.balanced(n, b)
    assert total_multiplicity(full_spectrum(p)) == math.factorial(2 * n)


@pytest.mark.unit
def test_trace_identity(oracle_params):
    """Test that the spectrum reproduces trace(P) = N! P(e)."""
    entries = full_spectrum(oracle_params)
    assert power_trace(oracle_params, 1, entries) == expected_trace(oracle_params)
    assert power_trace(oracle_params, 0, entries) == math.factorial(oracle_params.N)


@pytest.mark.unit
def test_trace_of_square(oracle_params):
    """Test trace(P^2) against the sum of squared step probabilities."""
    assert power_trace(oracle_params, 2) == _trace_of_square(oracle_params)


@pytest.mark.unit
@pytest.mark.parametrize("n_a,n_b", [(1, 3), (2, 3)])
def test_trace_identities_unbalanced(n_a, n_b):
    """Test both trace identities on unbalanced decks with b = 1."""
    p = ShuffleParams(n_a, n_b, 1)
    assert power_trace(p, 1) == expected_trace(p)
    assert power_trace(p, 2) == _trace_of_square(p)


@pytest.mark.unit
def test_power_trace_rejects_negative(balanced_half):
    """Test that a negative power raises."""
    with pytest.raises(InvalidInputError):
        power_trace(balanced_half, -1)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("b", ["1", "1/2", "1/5"])
def test_eigenvalue_range_and_ergodicity(n, b):
    """Test that every eigenvalue lies in [-1, 1] and 1 occurs once."""
    entries = full_spectrum(ShuffleParams.balanced(n, b))
    assert all(-1 <= e.eig <= 1 for e in entries)
    assert sum(e.mult for e in entries if e.eig == 1) == 1


@pytest.mark.unit
def test_rt_eigenvalue_examples():
    """Test D_mu on rows, columns and the standard representation."""
    n = 6
    assert rt_eigenvalue(P(n), n) == 1
    assert rt_eigenvalue(Partition.column(n), n) == Fraction(-1) + Fraction(2, n)
    assert rt_eigenvalue(P(n - 1, 1), n) == 1 - Fraction(2, n)
    with pytest.raises(InvalidInputError):
        rt_eigenvalue(P(2, 1), 4)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("b", ["1", "1/2", "1/4"])
def test_envelope_dominates_eigenvalues(n, b):
    """Test |Eig| <= eig_rt_envelope(mu, nu) on every triple."""
    p = ShuffleParams.balanced(n, b)
    for e in full_spectrum(p):
        assert abs(e.eig) <= eig_rt_envelope(p, e.mu, e.nu)


@pytest.mark.unit
def test_envelope_tight_at_trivial_triple(balanced_half):
    """Test that the envelope of ((n), (n)) is exactly 1."""
    assert eig_rt_envelope(balanced_half, P(2), P(2)) == 1


@pytest.mark.unit
def test_envelope_needs_balanced_deck():
    """Test that the envelope refuses unbalanced decks."""
    with pytest.raises(UnbalancedSplitError):
        eig_rt_envelope(ShuffleParams(1, 2, 1), P(1), P(2))


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("b", ["1", "1/2", "1/4"])
def test_conjugation_sum(n, b):
    """Test Eig(lam, mu, nu) + Eig(lam*, mu*, nu*) = (a^2 + b^2)/(2n)."""
    p = ShuffleParams.balanced(n, b)
    target = (p.a**2 + p.b**2) / (2 * n)
    for e in full_spectrum(p):
        assert e.eig + eigenvalue(p, conjugate(e.lam), conjugate(e.mu), conjugate(e.nu)) == target


@pytest.mark.unit
@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("b", ["1", "1/2", "1/4"])
def test_main_term_sandwich(n, b):
    """Test 1 - 2aj/N <= Eig <= 1 - 2bj/N + 2ab j(j-1)/N^2 for lam_1 = N - j, 1 <= j < n/a."""
    p = ShuffleParams.balanced(n, b)
    shift = (p.a**2 + p.b**2) / p.N
    for lam in enumerate_partitions(p.N):
        for j in (p.N - lam.first_row, p.N - lam.first_column):
            if not (1 <= j and j * p.a < n):
                continue
            lower, upper = main_term_sandwich(p, j)
            for e in entries_for(p, lam):
                if lam.first_row == p.N - j:
                    assert lower <= e.eig <= upper
                if lam.first_column == p.N - j:
                    # mirrored bound on the conjugate side
                    assert -upper + shift <= e.eig <= -lower + shift


@pytest.mark.unit
def test_main_term_sandwich_tight_for_unbiased_deck():
    """Test that b = 1 attains the lower end at (N - j, 1^j) and the upper end at (N - j, j)."""
    p = ShuffleParams.balanced(4, 1)
    j = 2
    lower, upper = main_term_sandwich(p, j)
    assert {e.eig for e in entries_for(p, P(6, 1, 1))} == {lower}
    assert {e.eig for e in entries_for(p, P(6, 2))} == {upper}


@pytest.mark.unit
def test_first_moment_closed_form_at_zero_and_one(oracle_params):
    """Test that K = 0 gives N and K = 1 gives N - 2 + 2 P(e)."""
    p = oracle_params
    assert first_moment_closed_form(p, 0) == p.N
    assert first_moment_closed_form(p, 1) == p.N - 2 * (1 - identity_mass(p))


@pytest.mark.unit
def test_first_moment_closed_form_from_spectrum():
    """Test the closed form against the four permutation-module triples."""
    p = ShuffleParams.balanced(3, "1/3")
    n = 3
    triples = [
        (P(6), P(3), P(3)),
        (P(5, 1), P(2, 1), P(3)),
        (P(5, 1), P(3), P(2, 1)),
        (P(5, 1), P(3), P(3)),
    ]
    weights = [1, n - 1, n - 1, 1]
    for K in range(6):
        expected = sum(w * eigenvalue(p, *t) ** K for w, t in zip(weights, triples))
        assert first_moment_closed_form(p, K) == expected


@pytest.mark.unit
def test_first_moment_rejects_negative(balanced_half):
    """Test that a negative number of shuffles raises."""
    with pytest.raises(InvalidInputError):
        first_moment_closed_form(balanced_half, -1)


@pytest.mark.unit
def test_spectrum_by_lambda_threaded(params_small):
    """Test that threaded streaming keeps canonical order and the same entries."""
    serial = list(spectrum_by_lambda(params_small))
    threaded = list(spectrum_by_lambda(params_small, threads=4))
    assert [lam for lam, _ in serial] == enumerate_partitions(6)
    assert threaded == serial
