"""Exit criteria, one marked group per criterion.

Run with ``pytest tests/test_acceptance.py`` to get the PASS/FAIL summary.
"""

import itertools
import random
from fractions import Fraction as F
from math import factorial

import pytest

from eulerpaths.asymptotics import b_closed_form, b_operator_exact, b_truncated_series, limit_verify
from eulerpaths.exact_core import MultiPoly, UniPoly
from eulerpaths.gamma_delta import delta_poly, delta_poly_bruteforce, gamma_poly, gamma_via_frobenius
from eulerpaths.identity_suite import run_polynomial_suite, verify_range
from eulerpaths.operator_calculus import (
    I_nk,
    apply_dmonomial_to_pi,
    apply_operator_to_pi,
    d_tail_sum,
    eq_new_n_lhs,
    eq_new_n_rhs,
    theorem1_closed_form,
    theorem1_symbolic_chain,
)
from eulerpaths.path_engine import bruteforce_counts, path_count, path_count_bruteforce, ratio_sequence
from eulerpaths.special_numbers import eulerian, stirling1

q = UniPoly.var()
acc = pytest.mark.acceptance

SERIES_TOL = F(1, 10**6)
SERIES_SCHEDULE = (25, 50, 100, 200, 400)


def series_reaches_tol(c, prefix):
    """Smallest N in the schedule with relative error under SERIES_TOL, else None.

    The remainder is monotone in N, so stopping at the first hit is safe.
    """
    b = b_closed_form(c, prefix)
    for N in SERIES_SCHEDULE:
        if abs(b_truncated_series(c, prefix, N) - b) <= SERIES_TOL * abs(b):
            return N
    return None


# 1 ------------------------------------------------------------------------

@acc(1, "recurrence equals brute-force enumeration, dims 2-4, c<=3, sum(i)<=10")
@pytest.mark.parametrize("dim", [2, 3, 4])
def test_recurrence_matches_bruteforce(dim):
    bad = []
    for c in itertools.product(range(4), repeat=dim):
        walks = bruteforce_counts(c, 10)
        for i in itertools.product(range(11), repeat=dim):
            if sum(i) <= 10 and path_count(c, i) != walks.get(i, 0):
                bad.append((c, i))
    assert not bad


@acc(1, "recurrence equals brute-force enumeration, dims 2-4, c<=3, sum(i)<=10")
def test_bruteforce_ordering_enumerator_spot_checks():
    for c, i in [((1, 1), (1, 1)), ((3, 0, 2), (2, 3, 1)), ((0, 1, 2, 3), (1, 2, 3, 4)), ((0, 0), (1, 0))]:
        assert path_count_bruteforce(c, i, budget=10) == path_count(c, i)


# 2 ------------------------------------------------------------------------

@acc(2, "Eulerian identification for i+j<=12 with factorial row sums")
def test_eulerian_identification():
    for i in range(13):
        for j in range(13 - i):
            assert path_count((1, 1), (i, j)) == eulerian(i, j)
    for k in range(1, 14):
        assert sum(path_count((1, 1), (i, k - 1 - i)) for i in range(k)) == factorial(k)


# 3 ------------------------------------------------------------------------

@acc(3, "ratio limit: exact error (h+3)/2^h, tolerances at h=20,30; c=(1,1,1) at h<=50")
def test_limit_two_dimensional():
    seq = ratio_sequence((1, 1), (1,), 30)
    for h, r in enumerate(seq, start=1):
        assert 4 - r == F(h + 3, 2**h)
    assert abs(seq[19] - 4) < F(1, 10**3)
    assert abs(seq[29] - 4) < F(1, 10**6)
    assert limit_verify((1, 1), (1,), 30, F(1, 10**6)).passed


@acc(3, "ratio limit: exact error (h+3)/2^h, tolerances at h=20,30; c=(1,1,1) at h<=50")
def test_limit_three_dimensional():
    rep = limit_verify((1, 1, 1), (1, 1), 50, F(1, 10**4))
    assert rep.target == b_closed_form((1, 1, 1), (1, 1)) == 54
    assert rep.passed


# 4 ------------------------------------------------------------------------

@acc(4, "closed form = operator route exactly; truncated series within 1e-6 at N<=400")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_three_routes_all_ones(n):
    ones = (1,) * n
    for c in itertools.product(range(4), repeat=n + 1):
        assert b_closed_form(c, ones) == b_operator_exact(c)
        assert series_reaches_tol(c, ones) is not None, c


@acc(4, "closed form = operator route exactly; truncated series within 1e-6 at N<=400")
@pytest.mark.parametrize("n", [1, 2, 3])
def test_general_prefixes_full_grid(n):
    prefixes = [p for p in itertools.product(range(5), repeat=n) if 1 <= sum(p) <= 4 and p != (1,) * n]
    for p in prefixes:
        for c in itertools.product(range(4), repeat=n + 1):
            assert series_reaches_tol(c, p) is not None, (c, p)


@acc(4, "closed form = operator route exactly; truncated series within 1e-6 at N<=400")
def test_general_prefixes_four_dimensional_sample():
    # every such prefix has a zero coordinate; 64 fixed c-vectors per prefix
    rng = random.Random(20240611)
    grid = list(itertools.product(range(4), repeat=5))
    prefixes = [p for p in itertools.product(range(5), repeat=4) if 1 <= sum(p) <= 4 and p != (1,) * 4]
    assert len(prefixes) == 68
    for p in prefixes:
        for c in rng.sample(grid, 64):
            assert series_reaches_tol(c, p) is not None, (c, p)


# 5 ------------------------------------------------------------------------

@acc(5, "closed form for (u d/du)^k (1-u)^-1 equals the symbolic chain, k<=10, a<=6")
def test_theorem1_range():
    for a in range(1, 7):
        for k in range(11):
            assert theorem1_closed_form(k, a).expand() == theorem1_symbolic_chain(k, a).expand()


@acc(5, "closed form for (u d/du)^k (1-u)^-1 equals the symbolic chain, k<=10, a<=6")
@pytest.mark.parametrize("a", [1, 2, 3])
def test_theorem1_worked_examples(a):
    assert theorem1_closed_form(1, a).expand() == q * (q - a) / a**2
    assert theorem1_closed_form(2, a).expand() == (q**2 * (q - a) + q * (q - a) ** 2) / a**3
    expected = q**3 * (q - a) + 4 * q**2 * (q - a) ** 2 + q * (q - a) ** 3
    assert theorem1_closed_form(3, a).expand() == expected / a**4


# 6 ------------------------------------------------------------------------

@acc(6, "D-operator side equals product side as polynomials in (c, q), n<=5")
@pytest.mark.parametrize("n", range(1, 6))
def test_new_n(n):
    assert eq_new_n_lhs(n) == eq_new_n_rhs(n)


@acc(6, "D-operator side equals product side as polynomials in (c, q), n<=5")
def test_new_n_two_variable_examples():
    pi2 = q**2 / 2
    assert apply_dmonomial_to_pi((0, 0)) == pi2
    d1, d2 = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    assert apply_operator_to_pi(2 * d2 + d1) == pi2 * ((q - 2) + (q - 1))
    assert apply_operator_to_pi(d2 * d_tail_sum(1, 2)) == pi2 * (q - 1) * (q - 2)


# 7 ------------------------------------------------------------------------

@acc(7, "Stirling form of Gamma equals the Eulerian (Frobenius) form, k,n<=12")
def test_frobenius():
    for k in range(1, 13):
        for n in range(1, 13):
            assert gamma_poly(k, n) == gamma_via_frobenius(k, n)


# 8 ------------------------------------------------------------------------

@acc(8, "both Delta definitions agree for n<=12; small Delta examples")
def test_delta_dual():
    for n in range(1, 13):
        for k in range(1, n + 1):
            assert delta_poly(n, k) == delta_poly_bruteforce(n, k)
    assert delta_poly(2, 1) == q - 1
    assert delta_poly(3, 2) == 2 * q - 3
    assert delta_poly(3, 1) == q**2 - 3 * q + 2


# 9 ------------------------------------------------------------------------

@acc(9, "n! I_n^k(q) / q^n = Delta_{n+1,n-k+1}(q), n<=6, all k")
@pytest.mark.parametrize("n", range(1, 7))
def test_i_nk(n):
    for k in range(n + 1):
        lhs = I_nk(n, k) * factorial(n)
        assert lhs == delta_poly(n + 1, n - k + 1).shift(n)
        assert all(lhs.coeff(e) == 0 for e in range(n))


# 10 -----------------------------------------------------------------------

@acc(10, "identity suite passes at colyrel/stirling_form/coefs n<=10, star/known_s1 n<=30")
@pytest.mark.parametrize("name,ceiling", [
    ("colyrel", 10), ("stirling_form", 10), ("coefs", 10), ("star", 30), ("known_s1", 30),
])
def test_identity_suite(name, ceiling):
    rep = verify_range(name, ceiling)
    assert rep.passed, rep.counterexample
    assert rep.range["n"][1] == ceiling


@acc(10, "identity suite passes at colyrel/stirling_form/coefs n<=10, star/known_s1 n<=30")
def test_known_stirling_values():
    assert stirling1(5, 4) == -10
    assert stirling1(5, 3) == 35


# 11 -----------------------------------------------------------------------

MUTATION_N = 6


def _bumped(base, key, idx):
    def provider(a, b):
        p = base(a, b)
        return p + UniPoly.monomial(idx, 1) if (a, b) == key else p

    return provider


@acc(11, "any +1 on a single Gamma or Delta coefficient is caught with a counterexample")
def test_mutation_sensitivity():
    cases = []
    for k in range(1, MUTATION_N + 1):
        for n in range(1, MUTATION_N + 1):
            cases += [{"gamma": _bumped(gamma_poly, (k, n), e)} for e in range(k)]
    for n in range(1, MUTATION_N + 1):
        for k in range(1, n + 1):
            cases += [{"delta": _bumped(delta_poly, (n, k), e)} for e in range(n - k + 1)]
    assert all(r.passed for r in run_polynomial_suite(MUTATION_N))
    survivors = 0
    for providers in cases:
        failing = [r for r in run_polynomial_suite(MUTATION_N, **providers) if not r.passed]
        if not failing or any(r.counterexample is None for r in failing):
            survivors += 1
    assert survivors == 0
