"""Operators D_a = u_a d/du_a acting on pi_n = prod_b 1/(1 - u_b).

Every u_a is tied to one symbol q through ``u_a = (q - a)/q``, so
``1/(1 - u_a) = q/a`` and the D_a commute.  A polynomial in the D_a is a
:class:`MultiPoly` over n variables (variable ``a-1`` stands for D_a); it
is applied to pi_n monomial by monomial, each factor closed-form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial

from .errors import OutOfRange
from .exact_core import MultiPoly, RationalFnU, ScaledPoly, UniPoly, rfn_mul_u_ddu, rfn_substitute_u
from .special_numbers import eulerian

__all__ = [
    "DMonomial",
    "theorem1_closed_form",
    "theorem1_symbolic_chain",
    "d_tail_sum",
    "apply_dmonomial_to_pi",
    "apply_operator_to_pi",
    "eq_new_n_lhs",
    "eq_new_n_rhs",
    "I_nk",
]

DMonomial = tuple[int, ...]


@lru_cache(maxsize=None)
def theorem1_closed_form(k: int, a: int) -> ScaledPoly:
    """(u d/du)^k (1-u)^-1 at u = (q-a)/q.

    Returns ``a^(-k-1) * sum_{i+j=k-1} A(i,j) q^(i+1) (q-a)^(j+1)`` with the
    power of ``a`` kept as the scale.  ``k = 0`` gives ``q/a``.
    """
    if a < 1:
        raise OutOfRange(f"a must be a positive integer, got {a}")
    if k < 0:
        raise OutOfRange(f"k must be nonnegative, got {k}")
    if k == 0:
        return ScaledPoly(UniPoly.var(), Fraction(1, a))
    q_minus_a = UniPoly((-a, 1))
    body = UniPoly()
    for i in range(k):
        j = k - 1 - i
        body = body + (q_minus_a ** (j + 1)).shift(i + 1) * eulerian(i, j)
    return ScaledPoly(body, Fraction(1, a ** (k + 1)))


def theorem1_symbolic_chain(k: int, a: int) -> ScaledPoly:
    """Same quantity, by differentiating the rational function k times."""
    f = RationalFnU.geometric()
    for _ in range(k):
        f = rfn_mul_u_ddu(f)
    return rfn_substitute_u(f, a)


@lru_cache(maxsize=None)
def _factor(m: int, b: int) -> UniPoly:
    return theorem1_closed_form(m, b).expand()


@lru_cache(maxsize=None)
def apply_dmonomial_to_pi(mono: DMonomial) -> UniPoly:
    """prod_b D_b^{m_b} pi_n, n = len(mono), as an expanded polynomial in q."""
    result = UniPoly.const(1)
    for b, m in enumerate(mono, start=1):
        result = result * _factor(m, b)
    return result


def apply_operator_to_pi(op: MultiPoly) -> MultiPoly | UniPoly:
    """Apply a D-polynomial to pi_n.

    If the coefficients are plain rationals the result is a UniPoly.  If
    ``op`` has extra leading variables (the c's), pass those through:
    see :func:`eq_new_n_lhs`.
    """
    total = UniPoly()
    for exp, coeff in op.items():
        total = total + apply_dmonomial_to_pi(exp) * coeff
    return total


def d_tail_sum(a: int, n: int) -> MultiPoly:
    """D_a + D_{a+1} + ... + D_n as a D-polynomial."""
    out = MultiPoly(n)
    for b in range(a, n + 1):
        out = out + MultiPoly.var(b - 1, n)
    return out


def _check_n(n: int) -> None:
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")


@lru_cache(maxsize=None)
def _tail_product_on_pi(positions: tuple[int, ...], n: int) -> UniPoly:
    op = MultiPoly.const(n, 1)
    for a in positions:
        op = op * d_tail_sum(a, n)
    return apply_operator_to_pi(op)


def eq_new_n_lhs(n: int) -> MultiPoly:
    """sum_sigma prod_a (c_sigma(a) + D_a + ... + D_n) applied to pi_n.

    Result: polynomial in c_1..c_n with UniPoly-in-q coefficients.  Each
    product is distributed over subsets S of positions taking the D-part;
    the permutation sum stays explicit.
    """
    _check_n(n)
    positions = range(1, n + 1)
    subsets = [s for r in range(n + 1) for s in combinations(positions, r)]
    d_part = {s: _tail_product_on_pi(s, n) for s in subsets}
    acc: dict[tuple[int, ...], UniPoly] = {}
    for sigma in permutations(range(n)):
        for s in subsets:
            exp = [0] * n
            for a in positions:
                if a not in s:
                    exp[sigma[a - 1]] += 1
            key = tuple(exp)
            acc[key] = acc.get(key, UniPoly()) + d_part[s]
    return MultiPoly(n, acc)


def eq_new_n_rhs(n: int) -> MultiPoly:
    """(q^n / n!) sum_sigma prod_a (c_sigma(a) + q - a)."""
    _check_n(n)
    total = MultiPoly(n)
    for sigma in permutations(range(n)):
        term = MultiPoly.const(n, UniPoly.const(1))
        for a in range(1, n + 1):
            factor = MultiPoly.var(sigma[a - 1], n, UniPoly.const(1)) + UniPoly((-a, 1))
            term = term * factor
        total = total + term
    return total * (UniPoly.monomial(n) / factorial(n))


def I_nk(n: int, k: int) -> UniPoly:
    """sum over i_1 < ... < i_k of prod_j (D_{i_j} + ... + D_n), applied to pi_n."""
    _check_n(n)
    if not 0 <= k <= n:
        raise OutOfRange(f"I_n^k needs 0 <= k <= n, got n={n}, k={k}")
    total = UniPoly()
    for s in combinations(range(1, n + 1), k):
        total = total + _tail_product_on_pi(s, n)
    return total
