import pytest

from symmrel.partitions import (
    equation_count,
    exponent_vectors,
    partition_count,
    vector_weight,
)


def brute_force_partitions(n, max_part):
    """Independent enumeration: partitions of n as descending part lists."""
    if n == 0:
        return [[]]
    out = []
    for part in range(min(n, max_part), 0, -1):
        for rest in brute_force_partitions(n - part, part):
            out.append([part] + rest)
    return out


class TestExponentVectors:
    def test_weight_two(self):
        assert exponent_vectors(2, 2) == [(2, 0), (0, 1)]

    def test_weight_zero(self):
        assert exponent_vectors(0, 1) == [()]

    def test_weight_four_listing_order(self):
        assert exponent_vectors(4, 4) == [
            (4, 0, 0, 0),
            (2, 1, 0, 0),
            (0, 2, 0, 0),
            (1, 0, 1, 0),
            (0, 0, 0, 1),
        ]

    def test_restricted_parts(self):
        vectors = exponent_vectors(5, 2)
        assert all(all(k == 0 for k in v[2:]) for v in vectors)
        assert len(vectors) == partition_count(5, 2)

    @pytest.mark.parametrize("n", range(0, 13))
    def test_full_length_and_weight(self, n):
        vectors = exponent_vectors(n, max(n, 1))
        assert len(vectors) == partition_count(n, n)
        for v in vectors:
            assert len(v) == n
            assert vector_weight(v) == n

    def test_matches_brute_force(self):
        for n in range(0, 10):
            for max_part in range(1, n + 2):
                assert len(exponent_vectors(n, max_part)) == len(
                    brute_force_partitions(n, max_part)
                )


class TestPartitionCount:
    def test_unrestricted_small(self):
        assert partition_count(4, 4) == 5
        assert partition_count(6, 6) == 11

    def test_restricted(self):
        assert partition_count(2, 2) == 2
        assert all(partition_count(n, 1) == 1 for n in range(0, 20))

    def test_recurrence(self):
        for n in range(1, 25):
            for m in range(1, n + 1):
                assert partition_count(n, m) == partition_count(n, m - 1) + partition_count(
                    n - m, m
                )


class TestEquationCount:
    def test_examples(self):
        assert equation_count(2) == 1
        assert equation_count(4) == 4  # P_2(2) + P_3(1) + P_4(0)
        assert equation_count(6) == 10

    def test_telescoping_identity(self):
        for n in range(2, 31):
            assert equation_count(n) == partition_count(n, n) - 1

    def test_precondition(self):
        with pytest.raises(ValueError):
            equation_count(1)
