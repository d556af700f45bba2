"""Eulerian numbers, Stirling numbers, binomials and symmetric functions.

Tables grow row by row on demand and are shared module-wide.  Lookups
outside the natural index range return 0, so identity sums can run over
their literal bounds.
"""

from __future__ import annotations

import threading
from itertools import combinations
from math import comb, prod
from typing import Sequence

from .exact_core import UniPoly

__all__ = [
    "eulerian",
    "stirling1",
    "stirling1_by_subsets",
    "stirling2",
    "falling_factorial",
    "binomial",
    "sigma_elementary",
]

_lock = threading.Lock()

# _EULER[k] holds A(i, k - i) for i = 0..k (row k counts permutations of k+1)
_EULER: list[list[int]] = [[1]]
# _S1[n][k] = s1(n, k), k = 0..n, signed
_S1: list[list[int]] = [[1]]
# _S2[k][m] = s2(k, m), m = 0..k
_S2: list[list[int]] = [[1]]


def _grow_eulerian(row: int) -> None:
    with _lock:
        while len(_EULER) <= row:
            k = len(_EULER)
            prev = _EULER[-1]
            new = []
            for i in range(k + 1):
                j = k - i
                # A(i,j) = (i+1) A(i, j-1) + (j+1) A(i-1, j)
                left = prev[i] if j >= 1 else 0
                right = prev[i - 1] if i >= 1 else 0
                new.append((i + 1) * left + (j + 1) * right)
            _EULER.append(new)


def eulerian(i: int, j: int) -> int:
    """Eulerian number A(i, j): permutations of i+j+1 with i descents."""
    if i < 0 or j < 0:
        return 0
    _grow_eulerian(i + j)
    return _EULER[i + j][i]


def _grow_s1(n: int) -> None:
    with _lock:
        while len(_S1) <= n:
            m = len(_S1) - 1
            prev = _S1[-1]
            # (q)_{m+1} = (q)_m * (q - m)
            new = [0] * (m + 2)
            for k, a in enumerate(prev):
                new[k + 1] += a
                new[k] -= m * a
            _S1.append(new)


def stirling1(n: int, k: int) -> int:
    """Signed Stirling number of the first kind, coefficient of q^k in (q)_n."""
    if n < 0 or k < 0 or k > n:
        return 0
    _grow_s1(n)
    return _S1[n][k]


def stirling1_by_subsets(n: int, k: int) -> int:
    """s1(n, k) as a signed sum over (n-k)-subsets of {1..n-1}."""
    if n < 1 or k < 0 or k > n:
        return 0
    total = sum(prod(subset) for subset in combinations(range(1, n), n - k))
    return (-1) ** (n - k) * total


def _grow_s2(k: int) -> None:
    with _lock:
        while len(_S2) <= k:
            prev = _S2[-1]
            r = len(_S2)
            new = [0] * (r + 1)
            for m in range(1, r + 1):
                # s2(k, m) = s2(k-1, m-1) + m s2(k-1, m)
                new[m] = prev[m - 1] + (m * prev[m] if m < r else 0)
            _S2.append(new)


def stirling2(k: int, m: int) -> int:
    """Stirling number of the second kind: partitions of a k-set into m blocks."""
    if k < 0 or m < 0 or m > k:
        return 0
    _grow_s2(k)
    return _S2[k][m]


def falling_factorial(n: int) -> UniPoly:
    """(q)_n = q (q-1) ... (q-n+1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _grow_s1(n)
    return UniPoly(_S1[n])


def binomial(a: int, b: int) -> int:
    """C(a, b), zero when b < 0 or b > a."""
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def sigma_elementary(values: Sequence, i: int):
    """i-th elementary symmetric function of ``values``.

    Works for any ring elements (ints, Fractions, polynomials) via the
    usual ``prod(1 + x t)`` recurrence.
    """
    n = len(values)
    if i < 0 or i > n:
        return 0
    e = [1] + [0] * n
    for x in values:
        for r in range(n, 0, -1):
            e[r] = e[r] + e[r - 1] * x
    return e[i]
