"""Range verification of the Gamma/Delta/Stirling identities.

Each ``verify_*`` function checks one identity at one size parameter and
returns an :class:`IdentityReport`.  Polynomial identities are compared
coefficient by coefficient.  Verifiers that consume Gamma or Delta accept
the constructors as keyword arguments so tests can inject faulty ones.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .exact_core import UniPoly
from .gamma_delta import delta_poly, delta_poly_bruteforce, gamma_poly, gamma_via_frobenius
from .operator_calculus import I_nk, eq_new_n_lhs, eq_new_n_rhs, theorem1_closed_form, theorem1_symbolic_chain
from .special_numbers import binomial, stirling1, stirling2

__all__ = [
    "IDENTITIES",
    "DEFAULT_CEILINGS",
    "IdentityReport",
    "verify_colyrel",
    "verify_stirling_form",
    "verify_coefs",
    "verify_star",
    "verify_known_s1",
    "verify_frobenius",
    "verify_thm1",
    "verify_new_n",
    "verify_delta_dual",
    "verify_i_nk",
    "verify_range",
    "run_suite",
    "run_polynomial_suite",
]

GammaFn = Callable[[int, int], UniPoly]
DeltaFn = Callable[[int, int], UniPoly]


def _enc(value):
    """JSON-friendly exact encoding."""
    if isinstance(value, UniPoly):
        return value.to_strings()
    if isinstance(value, (Fraction, int)):
        return str(value)
    return value


@dataclass
class IdentityReport:
    identity: str
    range: dict
    status: str = "pass"
    counterexample: dict | None = None
    elapsed_ms: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def fail(self, params: dict, lhs, rhs) -> None:
        if self.status == "pass":
            self.status = "fail"
            self.counterexample = {
                "params": params,
                "lhs": _enc(lhs),
                "rhs": _enc(rhs),
            }

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> IdentityReport:
        return cls(**d)


class _Timer:
    def __init__(self, report: IdentityReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = int((time.perf_counter() - self.t0) * 1000)
        return False


def verify_colyrel(n: int, gamma: GammaFn = gamma_poly, delta: DeltaFn = delta_poly) -> IdentityReport:
    """Delta_{n,k} = sum_{m=0}^{n-k} C(k+m,1+m) Gamma_{1+m}(q,n) Delta_{n,k+m} / n^(1+m)."""
    rep = IdentityReport("colyrel", {"n": n, "k": [1, n]})
    with _Timer(rep):
        for k in range(1, n + 1):
            lhs = delta(n, k)
            rhs = UniPoly()
            for m in range(n - k + 1):
                rhs = rhs + gamma(1 + m, n) * delta(n, k + m) * Fraction(comb(k + m, 1 + m), n ** (1 + m))
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
    return rep


def verify_stirling_form(n: int, gamma: GammaFn = gamma_poly, delta: DeltaFn = delta_poly) -> IdentityReport:
    """Delta_{n,k} = 1/(n-k) sum_{m=1}^{n-k} C(m+k,m+1) n^-m Gamma_{m+1} Delta_{n,k+m}, k < n."""
    rep = IdentityReport("stirling_form", {"n": n, "k": [1, n - 1]})
    with _Timer(rep):
        for k in range(1, n):
            lhs = delta(n, k)
            rhs = UniPoly()
            for m in range(1, n - k + 1):
                rhs = rhs + gamma(m + 1, n) * delta(n, k + m) * Fraction(comb(m + k, m + 1), n**m)
            rhs = rhs / (n - k)
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
        rep.notes.append(f"k={n} skipped: prefactor 1/(n-k) undefined")
    return rep


def _coefs_rhs(n: int, k: int, r: int, m_max: int) -> Fraction:
    total = Fraction(0)
    for m in range(m_max + 1):
        outer = binomial(m + n - k, m + 1)
        if not outer:
            continue
        for i in range(r + 1):
            s1 = stirling1(n, i + n - k + m)
            if not s1:
                continue
            total += (
                outer
                * binomial(i + n - k + m - 1, i)
                * Fraction((-1) ** (m + r - i), n ** (r - i + 1))
                * factorial(r - i + 1)
                * stirling2(m + 1, r - i + 1)
                * s1
            )
    return total


def verify_coefs(n: int) -> IdentityReport:
    """Coefficient-of-q^r form: the Stirling-number identity, all 1<=k<=n, 0<=r<=k.

    The sum over m is taken to k as written.  The alternative upper bound
    n-k is evaluated as well and any disagreement is noted (not failed).
    """
    rep = IdentityReport("coefs", {"n": n, "k": [1, n], "r": "0..k"})
    alt_mismatch = []
    with _Timer(rep):
        for k in range(1, n + 1):
            for r in range(k + 1):
                lhs = binomial(r + n - k - 1, r) * stirling1(n, r + n - k)
                rhs = _coefs_rhs(n, k, r, k)
                if lhs != rhs:
                    rep.fail({"n": n, "k": k, "r": r}, lhs, rhs)
                if _coefs_rhs(n, k, r, n - k) != rhs:
                    alt_mismatch.append((k, r))
            if not rep.passed:
                break
    if alt_mismatch:
        rep.notes.append(
            f"upper bound m<=n-k disagrees with m<=k at {len(alt_mismatch)} (k,r) cells, "
            f"first {alt_mismatch[0]}; m<=k used"
        )
    else:
        rep.notes.append("upper bounds m<=k and m<=n-k agree on every cell")
    return rep


def verify_star(n: int) -> IdentityReport:
    """s1(n,n-k) = (1/k) sum_{m=1}^k C(m+n-k,m+1) (-1)^m s1(n,n-k+m), k = 1..n."""
    rep = IdentityReport("star", {"n": n, "k": [1, n]})
    with _Timer(rep):
        for k in range(1, n + 1):
            lhs = Fraction(stirling1(n, n - k))
            rhs = Fraction(
                sum(binomial(m + n - k, m + 1) * (-1) ** m * stirling1(n, n - k + m) for m in range(1, k + 1)),
                k,
            )
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
    return rep


def verify_known_s1(n: int) -> IdentityReport:
    """s1(n,n-1) = -C(n,2) and s1(n,n-2) = n(n-1)(n-2)(3n-1)/24."""
    rep = IdentityReport("known_s1", {"n": n})
    with _Timer(rep):
        if n >= 2:
            lhs, rhs = stirling1(n, n - 1), -comb(n, 2)
            if lhs != rhs:
                rep.fail({"n": n, "which": "s1(n,n-1)"}, lhs, rhs)
        if n >= 3 and rep.passed:
            lhs, rhs = stirling1(n, n - 2), Fraction(n * (n - 1) * (n - 2) * (3 * n - 1), 24)
            if lhs != rhs:
                rep.fail({"n": n, "which": "s1(n,n-2)"}, lhs, rhs)
        if n < 2:
            rep.notes.append("no closed form applies for n < 2")
    return rep


def verify_frobenius(n: int, k_max: int = 12, gamma: GammaFn = gamma_poly) -> IdentityReport:
    """Gamma_k(q,n) from Stirling numbers equals sum A(i,j) q^i (q-n)^j."""
    rep = IdentityReport("frobenius", {"n": n, "k": [1, k_max]})
    with _Timer(rep):
        for k in range(1, k_max + 1):
            lhs, rhs = gamma(k, n), gamma_via_frobenius(k, n)
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
    return rep


def verify_thm1(a: int, k_max: int = 10) -> IdentityReport:
    """Closed form for (u d/du)^k (1-u)^-1 against repeated differentiation."""
    rep = IdentityReport("thm1", {"a": a, "k": [0, k_max]})
    with _Timer(rep):
        for k in range(k_max + 1):
            lhs = theorem1_closed_form(k, a).expand()
            rhs = theorem1_symbolic_chain(k, a).expand()
            if lhs != rhs:
                rep.fail({"a": a, "k": k}, lhs, rhs)
                break
    return rep


def verify_new_n(n: int) -> IdentityReport:
    """D-operator side equals the product side, as polynomials in (c, q)."""
    rep = IdentityReport("new_n", {"n": n})
    with _Timer(rep):
        lhs, rhs = eq_new_n_lhs(n), eq_new_n_rhs(n)
        if lhs != rhs:
            diff = lhs - rhs
            exp = min(diff.terms)
            rep.fail(
                {"n": n, "c_exponent": list(exp)},
                lhs.terms.get(exp, UniPoly()),
                rhs.terms.get(exp, UniPoly()),
            )
    return rep


def verify_delta_dual(n: int, delta: DeltaFn = delta_poly) -> IdentityReport:
    """Stirling-based Delta equals the subset-sum definition."""
    rep = IdentityReport("delta_dual", {"n": n, "k": [1, n]})
    with _Timer(rep):
        for k in range(1, n + 1):
            lhs, rhs = delta(n, k), delta_poly_bruteforce(n, k)
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
    return rep


def verify_i_nk(n: int, delta: DeltaFn = delta_poly) -> IdentityReport:
    """n! I_n^k(q) = q^n Delta_{n+1,n-k+1}(q) for k = 0..n."""
    rep = IdentityReport("i_nk", {"n": n, "k": [0, n]})
    with _Timer(rep):
        for k in range(n + 1):
            lhs = I_nk(n, k) * factorial(n)
            rhs = delta(n + 1, n - k + 1).shift(n)
            if lhs != rhs:
                rep.fail({"n": n, "k": k}, lhs, rhs)
                break
    return rep


# name -> (per-size verifier, smallest size, default ceiling)
IDENTITIES: dict[str, tuple[Callable[..., IdentityReport], int, int]] = {
    "colyrel": (verify_colyrel, 1, 10),
    "stirling_form": (verify_stirling_form, 2, 10),
    "coefs": (verify_coefs, 1, 10),
    "star": (verify_star, 1, 30),
    "known_s1": (verify_known_s1, 2, 30),
    "frobenius": (verify_frobenius, 1, 12),
    "thm1": (verify_thm1, 1, 6),
    "new_n": (verify_new_n, 1, 5),
    "delta_dual": (verify_delta_dual, 1, 12),
    "i_nk": (verify_i_nk, 1, 6),
}

DEFAULT_CEILINGS = {name: entry[2] for name, entry in IDENTITIES.items()}

# beyond these the work is factorial in n
HARD_CEILINGS = {"new_n": 6, "i_nk": 7, "delta_dual": 16}


def verify_range(name: str, max_n: int | None = None, **kwargs) -> IdentityReport:
    """Run one identity for every size from its minimum up to ``max_n``."""
    if name not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}")
    fn, lo, default = IDENTITIES[name]
    hi = default if max_n is None else max_n
    notes = []
    cap = HARD_CEILINGS.get(name)
    if cap is not None and hi > cap:
        notes.append(f"ceiling lowered from {hi} to {cap}")
        hi = cap
    if name == "frobenius":
        kwargs.setdefault("k_max", hi)
    rep = IdentityReport(name, {"n": [lo, hi]}, notes=notes)
    t0 = time.perf_counter()
    for n in range(lo, hi + 1):
        sub = fn(n, **kwargs)
        for note in sub.notes:
            tagged = f"n={n}: {note}"
            if "agree on every cell" not in note and "skipped" not in note:
                rep.notes.append(tagged)
        if not sub.passed:
            rep.status = "fail"
            rep.counterexample = sub.counterexample
            break
    if name == "stirling_form":
        rep.notes.append("k=n skipped for every n: prefactor 1/(n-k) undefined")
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


def run_suite(names=None, max_n: int | None = None) -> list[IdentityReport]:
    names = list(IDENTITIES) if names is None else list(names)
    return [verify_range(name, max_n) for name in names]


def run_polynomial_suite(
    max_n: int, gamma: GammaFn = gamma_poly, delta: DeltaFn = delta_poly
) -> list[IdentityReport]:
    """Every check that consumes Gamma or Delta, with the constructors swappable."""
    reports = []
    for name, fn, lo, kwargs in [
        ("colyrel", verify_colyrel, 1, {"gamma": gamma, "delta": delta}),
        ("stirling_form", verify_stirling_form, 2, {"gamma": gamma, "delta": delta}),
        ("frobenius", verify_frobenius, 1, {"gamma": gamma, "k_max": max_n}),
        ("delta_dual", verify_delta_dual, 1, {"delta": delta}),
        ("i_nk", verify_i_nk, 1, {"delta": delta}),
    ]:
        rep = IdentityReport(name, {"n": [lo, max_n]})
        for n in range(lo, max_n + 1 if name != "i_nk" else max_n):
            sub = fn(n, **kwargs)
            if not sub.passed:
                rep.status, rep.counterexample = "fail", sub.counterexample
                break
        reports.append(rep)
    return reports
