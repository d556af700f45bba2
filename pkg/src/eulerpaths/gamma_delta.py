"""Gamma and Delta polynomials in q.

``gamma_poly(k, n)`` is the signed Stirling-2 form of a shifted Eulerian
polynomial; ``gamma_via_frobenius`` builds the same thing from the Eulerian
triangle.  ``delta_poly`` uses Stirling numbers of the first kind,
``delta_poly_bruteforce`` sums over subsets directly.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import factorial

from .errors import BudgetExceeded, OutOfRange
from .exact_core import UniPoly
from .special_numbers import binomial, eulerian, stirling1, stirling2

__all__ = [
    "DELTA_SUBSET_BUDGET",
    "gamma_poly",
    "gamma_via_frobenius",
    "delta_poly",
    "delta_poly_bruteforce",
]

DELTA_SUBSET_BUDGET = 16


def _check_gamma(k: int, n: int) -> None:
    if k < 1:
        raise OutOfRange(f"Gamma_k needs k >= 1, got k={k}")
    if n < 1:
        raise OutOfRange(f"Gamma_k(q, n) needs n >= 1, got n={n}")


@lru_cache(maxsize=None)
def gamma_poly(k: int, n: int) -> UniPoly:
    """sum_{i=1..k} (-1)^(k-i) s2(k,i) i! q^(i-1) n^(k-i)."""
    _check_gamma(k, n)
    coeffs = [(-1) ** (k - i) * stirling2(k, i) * factorial(i) * n ** (k - i) for i in range(1, k + 1)]
    return UniPoly(coeffs)


@lru_cache(maxsize=None)
def gamma_via_frobenius(k: int, n: int) -> UniPoly:
    """sum_{i+j=k-1} A(i,j) q^i (q-n)^j."""
    _check_gamma(k, n)
    q_minus_n = UniPoly((-n, 1))
    total = UniPoly()
    for i in range(k):
        j = k - 1 - i
        total = total + (q_minus_n**j).shift(i) * eulerian(i, j)
    return total


def _check_delta(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise OutOfRange(f"Delta_(n,k) needs 1 <= k <= n, got n={n}, k={k}")


@lru_cache(maxsize=None)
def delta_poly(n: int, k: int) -> UniPoly:
    """sum_{m=0..n-k} C(k-1+m, m) s1(n, k+m) q^m."""
    _check_delta(n, k)
    return UniPoly(binomial(k - 1 + m, m) * stirling1(n, k + m) for m in range(n - k + 1))


def delta_poly_bruteforce(n: int, k: int, budget: int = DELTA_SUBSET_BUDGET) -> UniPoly:
    """Sum of (q-i_1)...(q-i_{n-k}) over (n-k)-subsets of {1..n-1}."""
    _check_delta(n, k)
    if n > budget:
        raise BudgetExceeded(f"subset enumeration for n={n} exceeds budget n <= {budget}")
    total = UniPoly()
    for subset in combinations(range(1, n), n - k):
        total = total + UniPoly.from_roots(subset)
    return total
