"""Integer partitions encoded as exponent vectors.

An exponent vector k = (k_1, ..., k_n) with sum(i * k_i) = n indexes the
power-sum product p_1^k_1 * p_2^k_2 * ... * p_n^k_n.  Vectors are plain
tuples of ints, padded with trailing zeros to length n so they can be used
as positional table keys; the empty tuple is the single vector of weight 0.

Listing order is the table order used throughout: ascending lexicographic
on the reversed vector, which puts p_1-dominant products first, e.g. for
n = 4: (4,0,0,0), (2,1,0,0), (0,2,0,0), (1,0,1,0), (0,0,0,1).
"""

from __future__ import annotations

from functools import lru_cache

ExponentVector = tuple[int, ...]

__all__ = [
    "ExponentVector",
    "exponent_vectors",
    "partition_count",
    "equation_count",
    "vector_weight",
    "check_vector",
]


def vector_weight(k: ExponentVector) -> int:
    return sum((i + 1) * e for i, e in enumerate(k))


def check_vector(k: ExponentVector, weight: int) -> None:
    """Validate that k is a weight-`weight` exponent vector of full length."""
    if len(k) != weight:
        raise ValueError(f"exponent vector {k} must have length {weight}")
    if any(e < 0 for e in k):
        raise ValueError(f"exponent vector {k} has negative entries")
    if vector_weight(k) != weight:
        raise ValueError(f"exponent vector {k} has weight {vector_weight(k)}, expected {weight}")


def exponent_vectors(n: int, max_part: int) -> list[ExponentVector]:
    """All exponent vectors of weight n with parts <= max_part, in listing order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if max_part < 1:
        raise ValueError("max_part must be >= 1")
    vectors = [tuple(v) for v in _gather(n, min(max_part, n))]
    if n == 0:
        return [()]
    out = []
    for v in vectors:
        padded = v + (0,) * (n - len(v))
        assert vector_weight(padded) == n
        out.append(padded)
    out.sort(key=lambda k: tuple(reversed(k)))
    return out


def _gather(remaining: int, max_part: int) -> list[list[int]]:
    """Exponent prefixes (k_1..k_max_part) for partitions of `remaining`."""
    if remaining == 0:
        return [[]]
    if max_part == 0:
        return []
    out = []
    if max_part == 1:
        return [[remaining]]
    for count in range(remaining // max_part + 1):
        for head in _gather(remaining - count * max_part, max_part - 1):
            head = head + [0] * (max_part - 1 - len(head))
            out.append(head + [count])
    return out


@lru_cache(maxsize=None)
def partition_count(n: int, max_part: int) -> int:
    """Number of partitions of n into parts <= max_part.

    Implements the recurrence P_m(n) = P_{m-1}(n) + P_m(n - m) with
    memoization; partition_count(n, n) is the unrestricted count P(n).
    """
    if n < 0:
        return 0
    if max_part < 0:
        raise ValueError("max_part must be >= 0")
    if n == 0:
        return 1
    if max_part == 0:
        return 0
    return partition_count(n, max_part - 1) + partition_count(n - max_part, max_part)


def equation_count(n: int) -> int:
    """sum_{m=2}^{n} P_m(n - m); telescopes to P(n) - 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return sum(partition_count(n - m, m) for m in range(2, n + 1))
