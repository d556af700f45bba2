from itertools import permutations
from math import factorial

import pytest

from eulerpaths.exact_core import UniPoly
from eulerpaths.special_numbers import (
    binomial,
    eulerian,
    falling_factorial,
    sigma_elementary,
    stirling1,
    stirling1_by_subsets,
    stirling2,
)

q = UniPoly.var()


def descents_count(i, j):
    """Permutations of i+j+1 elements with exactly i descents."""
    n = i + j + 1
    return sum(1 for p in permutations(range(n)) if sum(p[t] > p[t + 1] for t in range(n - 1)) == i)


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for idx in range(len(part)):
            yield part[:idx] + [[first] + part[idx]] + part[idx + 1:]
        yield [[first]] + part


def partition_count(k, m):
    return sum(1 for p in set_partitions(list(range(k))) if len(p) == m)


def test_eulerian_examples():
    assert eulerian(1, 1) == 4
    assert eulerian(2, 0) == 1
    assert eulerian(0, 2) == 1
    assert eulerian(2, 2) == descents_count(2, 2) == 66
    assert eulerian(-1, 3) == 0


@pytest.mark.parametrize("i,j", [(i, j) for i in range(5) for j in range(5) if i + j <= 5])
def test_eulerian_counts_descents(i, j):
    assert eulerian(i, j) == descents_count(i, j)


def test_eulerian_row_sums_and_symmetry():
    for k in range(1, 13):
        assert sum(eulerian(i, k - 1 - i) for i in range(k)) == factorial(k)
    for i in range(13):
        for j in range(13 - i):
            assert eulerian(i, j) == eulerian(j, i)


def test_stirling2_examples():
    assert stirling2(1, 1) == 1
    assert [stirling2(2, m) for m in (1, 2)] == [1, 1]
    assert [stirling2(3, m) for m in (1, 2, 3)] == [1, 3, 1]
    assert stirling2(5, 2) == partition_count(5, 2) == 15
    assert all(stirling2(k, k) == 1 for k in range(1, 15))


def test_stirling2_matches_partition_enumeration():
    for k in range(1, 9):
        for m in range(1, k + 1):
            assert stirling2(k, m) == partition_count(k, m)


def test_stirling1_examples():
    assert stirling1(2, 1) == -1
    assert stirling1(5, 4) == -10
    expanded = q * (q - 1) * (q - 2) * (q - 3)
    assert stirling1(4, 2) == expanded.coeff(2) == 11


def test_stirling1_two_definitions():
    for n in range(1, 13):
        for k in range(0, n + 1):
            assert stirling1(n, k) == stirling1_by_subsets(n, k)


def test_stirling_orthogonality():
    for n in range(1, 13):
        for m in range(1, 13):
            total = sum(stirling1(n, k) * stirling2(k, m) for k in range(0, 13))
            assert total == (1 if n == m else 0)


def test_out_of_range_is_zero():
    assert stirling1(3, 4) == 0
    assert stirling1(3, -1) == 0
    assert stirling1(4, 0) == 0
    assert stirling2(3, 0) == 0
    assert stirling2(2, 5) == 0


def test_falling_factorial_binomial_sigma():
    assert falling_factorial(3) == q**3 - 3 * q**2 + 2 * q
    assert falling_factorial(0) == 1
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0
    assert sigma_elementary([2, 3], 2) == 6
    assert sigma_elementary([2, 3], 1) == 5
    assert sigma_elementary([2, 3], 0) == 1
    assert sigma_elementary([2, 3, 4], 4) == 0
