"""
Tests for partitions and their statistics.
"""
import math
import pytest

from src.combinatorics.partitions import (
    Partition,
    add_partitions,
    canonical_sorted,
    conjugate,
    content_sum,
    diag_index,
    dominates,
    enumerate_partitions,
    format_partition,
    hardy_ramanujan_estimate,
    hook_lengths,
    inner_product,
    parse_partition,
    partition_count,
    partitions_fitting,
    partitions_with_first_row,
)
from src.exceptions import InvalidInputError

P = Partition.of


@pytest.mark.unit
def test_enumerate_canonical_order():
    """Test that partitions of 4 come out in reverse-lexicographic order."""
    assert enumerate_partitions(4) == [P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]


@pytest.mark.unit
def test_enumerate_zero_and_negative():
    """Test that 0 has the empty partition and negative sizes are rejected."""
    assert enumerate_partitions(0) == [Partition()]
    with pytest.raises(InvalidInputError):
        enumerate_partitions(-1)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(0, 16))
def test_enumeration_matches_partition_count(n):
    """Test that the enumeration has p(n) members, all distinct and of size n."""
    parts = enumerate_partitions(n)
    assert len(parts) == partition_count(n)
    assert len(set(parts)) == len(parts)
    assert all(lam.size == n for lam in parts)


@pytest.mark.unit
def test_partition_count_known_values():
    """Test that p(n) matches the classical table."""
    assert [partition_count(n) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partition_count(100) == 190569292
    assert partition_count(-3) == 0


@pytest.mark.unit
def test_hardy_ramanujan_estimate_close_at_100():
    """Test that the asymptotic estimate is within 5% of p(100)."""
    assert hardy_ramanujan_estimate(100) == pytest.approx(partition_count(100), rel=0.05)
    with pytest.raises(InvalidInputError):
        hardy_ramanujan_estimate(0)


@pytest.mark.unit
def test_partition_normalizes_trailing_zeros():
    """Test that trailing zeros are dropped and increasing parts are rejected."""
    assert P(3, 1, 0, 0) == P(3, 1)
    assert len(P(3, 1, 0)) == 2
    with pytest.raises(InvalidInputError):
        P(1, 2)


@pytest.mark.unit
def test_part_and_first_row_column():
    """Test zero padding, first row and first column."""
    lam = P(4, 2, 1)
    assert lam.part(0) == 4
    assert lam.part(5) == 0
    assert lam.first_row == 4
    assert lam.first_column == 3


@pytest.mark.unit
def test_containment_and_cells():
    """Test Young diagram containment and the cell listing."""
    lam = P(3, 1)
    assert lam.contains(P(2, 1))
    assert lam.contains(Partition())
    assert not lam.contains(P(2, 2))
    assert not lam.contains(P(1, 1, 1))
    assert list(lam.cells()) == [(0, 0), (0, 1), (0, 2), (1, 0)]


@pytest.mark.unit
@pytest.mark.parametrize("text,expected", [
    ("4,3,2", P(4, 3, 2)),
    ("1", P(1)),
    ("-", Partition()),
    (" 2,2 ", P(2, 2)),
])
def test_parse_partition(text, expected):
    """Test that the comma serialization parses."""
    assert parse_partition(text) == expected


@pytest.mark.unit
@pytest.mark.parametrize("text", ["3,x", "2,3", "3,0", "3,-1", "3,,1"])
def test_parse_partition_rejects_malformed(text):
    """Test that malformed serializations raise InvalidInputError."""
    with pytest.raises(InvalidInputError):
        parse_partition(text)


@pytest.mark.unit
def test_format_partition():
    """Test that formatting writes commas and '-' for the empty partition."""
    assert format_partition(P(4, 3, 2)) == "4,3,2"
    assert format_partition(Partition()) == "-"
    assert str(P(2, 1)) == "2,1"


@pytest.mark.unit
def test_conjugate_examples():
    """Test conjugation on a few shapes."""
    assert conjugate(P(4, 3, 2)) == P(3, 3, 2, 1)
    assert conjugate(P(5)) == Partition.column(5)
    assert conjugate(Partition()) == Partition()


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 10))
def test_conjugate_is_involution(n):
    """Test that conjugating twice is the identity and preserves size."""
    for lam in enumerate_partitions(n):
        assert conjugate(conjugate(lam)) == lam
        assert conjugate(lam).size == n


@pytest.mark.unit
def test_dominance_examples():
    """Test dominance on comparable and incomparable pairs."""
    assert dominates(P(3, 1), P(2, 2))
    assert not dominates(P(2, 2), P(3, 1))
    assert dominates(P(2, 2), P(2, 2))
    assert not dominates(P(3, 1, 1, 1), P(2, 2, 2))
    assert not dominates(P(2, 2, 2), P(3, 1, 1, 1))


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 9))
def test_dominance_reverses_under_conjugation(n):
    """Test that mu dominates lam iff lam* dominates mu*."""
    parts = enumerate_partitions(n)
    for mu in parts:
        for lam in parts:
            assert dominates(mu, lam) == dominates(conjugate(lam), conjugate(mu))


@pytest.mark.unit
def test_diag_index_examples():
    """Test the diagonal index of rows, columns and a hook."""
    assert diag_index(P(6)) == 15
    assert diag_index(Partition.column(6)) == -15
    assert diag_index(P(2, 1)) == 0
    assert diag_index(P(4, 3, 2)) == 6 + 3 + 1 - (3 + 3 + 1)


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 11))
def test_diag_index_identities(n):
    """Test Diag(lam*) = -Diag(lam) and Diag(lam) = sum of contents."""
    for lam in enumerate_partitions(n):
        assert diag_index(conjugate(lam)) == -diag_index(lam)
        assert diag_index(lam) == content_sum(lam)


@pytest.mark.unit
def test_inner_product_and_addition():
    """Test the row inner product and row-wise sum."""
    assert inner_product(P(3, 2), P(2, 2, 1)) == 10
    assert add_partitions(P(3, 1), P(2, 2, 1)) == P(5, 3, 1)
    assert add_partitions(Partition(), P(2)) == P(2)


@pytest.mark.unit
def test_partitions_with_first_row():
    """Test that the first-row slice is complete and ordered."""
    assert partitions_with_first_row(5, 3) == [P(3, 2), P(3, 1, 1)]
    assert partitions_with_first_row(5, 5) == [P(5)]
    assert partitions_with_first_row(5, 0) == []
    assert partitions_with_first_row(5, 6) == []


@pytest.mark.unit
@pytest.mark.parametrize("n", range(1, 9))
def test_first_row_slices_cover_everything(n):
    """Test that the first-row slices partition the full enumeration."""
    slices = [lam for k in range(n, 0, -1) for lam in partitions_with_first_row(n, k)]
    assert slices == enumerate_partitions(n)


@pytest.mark.unit
def test_partitions_fitting():
    """Test containment-limited enumeration."""
    assert partitions_fitting(3, P(2, 2)) == [P(2, 1)]
    assert partitions_fitting(4, P(2, 2)) == [P(2, 2)]
    assert partitions_fitting(5, P(2, 2)) == []
    assert partitions_fitting(0, P(2)) == [Partition()]


@pytest.mark.unit
@pytest.mark.parametrize("outer", [P(4, 3, 2), P(5, 1), P(3, 3, 3), P(2, 2, 1, 1)])
def test_partitions_fitting_matches_filter(outer):
    """Test that the capped generator equals filtering the full enumeration."""
    for n in range(outer.size + 1):
        expected = [lam for lam in enumerate_partitions(n) if outer.contains(lam)]
        assert partitions_fitting(n, outer) == expected


@pytest.mark.unit
def test_partitions_fitting_large_near_row():
    """Test that shapes close to a long row stay cheap to enumerate."""
    outer = P(397, 2, 1)
    inside = partitions_fitting(200, outer)
    assert P(200) in inside
    assert P(198, 2) in inside
    assert P(197, 2, 1) in inside
    assert len(inside) == 5


@pytest.mark.unit
def test_hook_lengths():
    """Test hook lengths of small shapes."""
    assert hook_lengths(P(2, 1)) == [3, 1, 1]
    assert sorted(hook_lengths(P(3, 2))) == [1, 1, 2, 3, 4]
    assert math.prod(hook_lengths(P(4))) == 24


@pytest.mark.unit
def test_canonical_sorted():
    """Test sorting by size and then reverse-lexicographically."""
    shuffled = [P(1, 1), P(3), P(2), P(2, 1), P(1, 1, 1)]
    assert canonical_sorted(shuffled) == [P(2), P(1, 1), P(3), P(2, 1), P(1, 1, 1)]
