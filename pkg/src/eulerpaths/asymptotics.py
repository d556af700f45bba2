"""Growth constants B_c(i_1..i_n) = lim_h A_c(i_1..i_n, h) / (c_{n+1} + m)^h.

Three routes are offered and cross-checked in the tests:

* ``b_closed_form`` -- ``((c_{n+1}+m)^m / m!) * sum_f prod_j (c_f(j) + c_{n+1} + j - 1)``
* ``b_truncated_series`` -- the defining multiple geometric series, cut at
  ``j_k <= N`` and summed exactly.
* ``b_operator_exact`` -- the D-operator form evaluated at ``q = c_{n+1} + n``
  (all-ones prefix only).

``limit_verify`` compares the closed form with the actual path-count
ratios.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .errors import BudgetExceeded, DegenerateNormalizer, DimensionMismatch, MalformedInput
from .exact_core import MultiPoly, UniPoly
from .operator_calculus import eq_new_n_lhs
from .path_engine import ratio_sequence
from .special_numbers import sigma_elementary

__all__ = [
    "MAP_FAMILY_GUARD",
    "Provenance",
    "BValue",
    "LimitReport",
    "map_family",
    "map_family_size",
    "b_closed_form",
    "b_truncated_series",
    "b_operator_exact",
    "b_operator_symbolic",
    "b_value",
    "limit_verify",
    "alpha_decomposition",
    "b_from_alpha",
]

MAP_FAMILY_GUARD = 8


class Provenance(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    TRUNCATED_SERIES = "truncated_series"
    OPERATOR_EXACT = "operator_exact"
    RATIO_LIMIT = "ratio_limit"


@dataclass(frozen=True)
class BValue:
    value: Fraction
    provenance: Provenance
    c: tuple[int, ...]
    prefix: tuple[int, ...]
    truncation: int | None = None
    steps: int | None = None

    def as_dict(self) -> dict:
        d = {
            "c": list(self.c),
            "prefix": list(self.prefix),
            "value": str(self.value),
            "provenance": self.provenance.value,
        }
        if self.truncation is not None:
            d["truncation"] = self.truncation
        if self.steps is not None:
            d["steps"] = self.steps
        return d


def _check(c: Sequence[int], prefix: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    c = tuple(int(x) for x in c)
    prefix = tuple(int(x) for x in prefix)
    if len(c) < 2:
        raise DimensionMismatch(f"parameter vector needs at least 2 entries, got {len(c)}")
    if len(prefix) != len(c) - 1:
        raise DimensionMismatch(f"prefix has {len(prefix)} entries, expected {len(c) - 1}")
    if any(x < 0 for x in c) or any(x < 0 for x in prefix):
        raise MalformedInput("parameter and prefix entries must be nonnegative")
    return c, prefix


def map_family(prefix: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All label sequences f(1..m) in {0..n-1} using label j exactly prefix[j] times."""
    counts = list(prefix)
    m = sum(counts)
    seq: list[int] = []

    def rec():
        if len(seq) == m:
            yield tuple(seq)
            return
        for j, k in enumerate(counts):
            if k:
                counts[j] -= 1
                seq.append(j)
                yield from rec()
                seq.pop()
                counts[j] += 1

    yield from rec()


def map_family_size(prefix: Sequence[int]) -> int:
    return factorial(sum(prefix)) // prod(factorial(k) for k in prefix)


def b_closed_form(c: Sequence[int], prefix: Sequence[int]) -> Fraction:
    """Exact B_c(prefix) from the closed product formula.

    The sum over label sequences is accumulated over states "how many of
    each label used so far", which is the same sum regrouped.
    """
    c, prefix = _check(c, prefix)
    last = c[-1]
    m = sum(prefix)
    n = len(prefix)
    layer = {(0,) * n: 1}
    for j in range(1, m + 1):
        nxt: dict[tuple[int, ...], int] = {}
        for used, val in layer.items():
            for lab in range(n):
                if used[lab] < prefix[lab]:
                    key = used[:lab] + (used[lab] + 1,) + used[lab + 1:]
                    nxt[key] = nxt.get(key, 0) + val * (c[lab] + last + j - 1)
        layer = nxt
    total = layer.get(tuple(prefix), 0) if m else 1
    return Fraction((last + m) ** m * total, factorial(m))


def b_truncated_series(c: Sequence[int], prefix: Sequence[int], N: int) -> Fraction:
    """Partial sum of the geometric series for B_c with every j_k <= N.

    Terms are ``prod_k (c_f(k) + j_1 + ... + j_k) * r_k^{j_k}`` with
    ``r_k = (c_{n+1} + k - 1) / (c_{n+1} + m)``, summed over all label
    sequences f.  Work is done in integers: a partial sum with
    ``j_1 + ... + j_k = s`` carries the implicit denominator ``Q^s``.
    """
    c, prefix = _check(c, prefix)
    if N < 0:
        raise MalformedInput("truncation N must be nonnegative")
    last = c[-1]
    m = sum(prefix)
    n = len(prefix)
    Q = last + m
    if Q == 0:
        raise DegenerateNormalizer("c_{n+1} + m is zero; the series ratios are undefined")
    if m == 0:
        return Fraction(1)
    if m > MAP_FAMILY_GUARD:
        raise BudgetExceeded(f"m = {m} exceeds the series guard m <= {MAP_FAMILY_GUARD}")

    states: dict[tuple[int, ...], list[int]] = {(0,) * n: [1]}
    for k in range(1, m + 1):
        p = last + k - 1
        p_cut = p ** (N + 1)
        nxt: dict[tuple[int, ...], list[int]] = {}
        for used, x in states.items():
            length = len(x) + N
            y = [0] * length
            prev = 0
            for s in range(length):
                v = p * prev
                if s < len(x):
                    v += x[s]
                if 0 <= s - N - 1 < len(x):
                    v -= p_cut * x[s - N - 1]
                y[s] = v
                prev = v
            for lab in range(n):
                if used[lab] < prefix[lab]:
                    key = used[:lab] + (used[lab] + 1,) + used[lab + 1:]
                    cl = c[lab]
                    acc = nxt.get(key)
                    if acc is None:
                        nxt[key] = [(cl + s) * v for s, v in enumerate(y)]
                    else:
                        for s, v in enumerate(y):
                            acc[s] += (cl + s) * v
        states = nxt
    x = states[tuple(prefix)]
    top = len(x) - 1
    num = 0
    for v in x:
        num = num * Q + v
    return Fraction(num, Q**top)


@lru_cache(maxsize=None)
def b_operator_symbolic(n: int, c_last: int) -> MultiPoly:
    """B_c(1..1) as a polynomial in c_1..c_n for fixed c_{n+1}."""
    q = Fraction(c_last + n)
    return eq_new_n_lhs(n).map_coeffs(lambda poly: poly(q))


def b_operator_exact(c: Sequence[int], prefix: Sequence[int] | None = None) -> Fraction:
    """B_c(1..1) through the D-operator identity at q = c_{n+1} + n."""
    c = tuple(int(x) for x in c)
    n = len(c) - 1
    if prefix is None:
        prefix = (1,) * n
    c, prefix = _check(c, prefix)
    if any(x != 1 for x in prefix):
        raise MalformedInput("the operator route only covers the all-ones prefix")
    return Fraction(b_operator_symbolic(n, c[-1]).evaluate([Fraction(x) for x in c[:-1]]))


def b_value(c: Sequence[int], prefix: Sequence[int], method: str = "closed", trunc: int = 200) -> BValue:
    c, prefix = _check(c, prefix)
    if method == "closed":
        return BValue(b_closed_form(c, prefix), Provenance.CLOSED_FORM, c, prefix)
    if method == "series":
        return BValue(b_truncated_series(c, prefix, trunc), Provenance.TRUNCATED_SERIES, c, prefix, truncation=trunc)
    if method == "operator":
        return BValue(b_operator_exact(c, prefix), Provenance.OPERATOR_EXACT, c, prefix)
    if method == "ratio":
        seq = ratio_sequence(c, prefix, trunc)
        return BValue(seq[-1], Provenance.RATIO_LIMIT, c, prefix, steps=trunc)
    raise MalformedInput(f"unknown method {method!r}")


@dataclass
class LimitReport:
    c: tuple[int, ...]
    prefix: tuple[int, ...]
    target: Fraction
    tol: Fraction
    ratios: list[Fraction]
    errors: list[Fraction] = field(init=False)
    decay: Fraction | None = field(init=False)

    def __post_init__(self):
        self.errors = [abs(r - self.target) for r in self.ratios]
        if len(self.errors) >= 2 and self.errors[-2]:
            self.decay = self.errors[-1] / self.errors[-2]
        else:
            self.decay = None

    @property
    def error(self) -> Fraction:
        return self.errors[-1]

    @property
    def passed(self) -> bool:
        return self.error < self.tol

    @property
    def expected_decay(self) -> Fraction:
        base = self.c[-1] + sum(self.prefix)
        return Fraction(base - 1, base)

    def rows(self) -> list[dict]:
        return [
            {
                "h": h,
                "ratio": str(r),
                "error": str(e),
                "error_approx": f"{float(e):.6e}",
            }
            for h, (r, e) in enumerate(zip(self.ratios, self.errors), start=1)
        ]

    def as_dict(self) -> dict:
        return {
            "c": list(self.c),
            "prefix": list(self.prefix),
            "target": str(self.target),
            "tol": str(self.tol),
            "error": str(self.error),
            "passed": self.passed,
            "decay": None if self.decay is None else str(self.decay),
            "expected_decay": str(self.expected_decay),
            "rows": self.rows(),
        }


def limit_verify(c: Sequence[int], prefix: Sequence[int], h: int, tol) -> LimitReport:
    """Compare A_c(prefix, h)/(c_{n+1}+m)^h with the closed form up to step h."""
    c, prefix = _check(c, prefix)
    target = b_closed_form(c, prefix)
    return LimitReport(c, prefix, target, Fraction(tol), ratio_sequence(c, prefix, h))


def alpha_decomposition(n: int, c_last: int) -> list[Fraction]:
    """alpha_{i,n}(c_last), i = 0..n: coefficients of c_1^i in B_{c_1,c_last}(n)."""
    if n < 1:
        raise MalformedInput("n must be >= 1")
    poly = UniPoly.const(Fraction((c_last + n) ** n, factorial(n)))
    for k in range(1, n + 1):
        poly = poly * UniPoly((c_last + k - 1, 1))
    return [poly.coeff(i) for i in range(n + 1)]


def b_from_alpha(c: Sequence[int]) -> Fraction:
    """Reassemble B_c(1..1) as sum_i i!(n-i)! sigma_i(c) alpha_{i,n}(c_{n+1})."""
    c = tuple(c)
    n = len(c) - 1
    alphas = alpha_decomposition(n, c[-1])
    head = list(c[:-1])
    return sum(
        (factorial(i) * factorial(n - i) * sigma_elementary(head, i) * alphas[i] for i in range(n + 1)),
        Fraction(0),
    )
