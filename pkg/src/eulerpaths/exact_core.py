"""Exact polynomial algebra over the rationals.

Integers are Python ints and rationals are :class:`fractions.Fraction`;
everything here is built on top of those two.  Three containers are
provided:

* :class:`UniPoly` -- dense univariate polynomial (the variable is called
  ``q`` when printing).
* :class:`MultiPoly` -- sparse multivariate polynomial.  Coefficients may
  be anything that supports ring arithmetic with ints, including
  :class:`UniPoly`, which is how polynomials in ``(c_1..c_n, q)`` are held.
* :class:`RationalFnU` -- ``N(u) / (1 - u)**d``, closed under ``u d/du``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "Q",
    "UniPoly",
    "MultiPoly",
    "RationalFnU",
    "ScaledPoly",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "rfn_mul_u_ddu",
    "rfn_substitute_u",
]

Q = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact coefficient required, got {type(x).__name__}")


class UniPoly:
    """Dense polynomial with rational coefficients, lowest degree first.

    Instances are immutable.  The zero polynomial has no coefficients and
    degree ``-1``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_as_fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def var(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, value) -> UniPoly:
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> UniPoly:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> UniPoly:
        p = cls.const(1)
        for r in roots:
            p = p * cls((-_as_fraction(r), 1))
        return p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    # arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> UniPoly | None:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Rational)):
            return UniPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return UniPoly(a + b for a, b in zip_longest(self._c, o._c, fillvalue=0))

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(-a for a in self._c)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            s = _as_fraction(other)
            return UniPoly(a * s for a in self._c)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self._c or not other._c:
            return UniPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            s = _as_fraction(other)
            if not s:
                raise ZeroDivisionError("polynomial divided by zero")
            return UniPoly(a / s for a in self._c)
        return NotImplemented

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> UniPoly:
        """Multiply by ``q**k``."""
        if not self._c:
            return self
        return UniPoly((0,) * k + self._c)

    def derivative(self) -> UniPoly:
        return UniPoly(k * a for k, a in enumerate(self._c) if k)

    def divmod_linear(self, root) -> tuple[UniPoly, Fraction]:
        """Synthetic division by ``(x - root)``."""
        r = _as_fraction(root)
        if not self._c:
            return UniPoly(), Fraction(0)
        acc = Fraction(0)
        quot = []
        for a in reversed(self._c):
            acc = acc * r + a
            quot.append(acc)
        rem = quot.pop()
        return UniPoly(reversed(quot)), rem

    def __call__(self, x):
        # Horner; x may be a Fraction, an int or another UniPoly
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly()
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    # comparison / display ------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if len(self._c) <= 1:
            return hash(self.coeff(0))
        return hash(self._c)

    def __repr__(self) -> str:
        return f"UniPoly({[str(a) for a in self._c]})"

    def __str__(self) -> str:
        return self.to_string()

    def to_string(self, var: str = "q") -> str:
        if not self._c:
            return "0"
        parts = []
        for k in range(len(self._c) - 1, -1, -1):
            a = self._c[k]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_strings(self) -> list[str]:
        """Coefficient list as exact strings, constant term first."""
        return [str(a) for a in self._c]


def poly_add(p: UniPoly, r: UniPoly) -> UniPoly:
    return p + r


def poly_mul(p: UniPoly, r: UniPoly) -> UniPoly:
    return p * r


def poly_eval(p: UniPoly, x) -> Fraction:
    return p(_as_fraction(x))


class ScaledPoly(NamedTuple):
    """A polynomial together with an exact scalar factor kept apart."""

    poly: UniPoly
    scale: Fraction

    def expand(self) -> UniPoly:
        return self.poly * self.scale


Exponent = tuple[int, ...]


class MultiPoly:
    """Sparse polynomial in ``nvars`` commuting variables.

    ``terms`` maps exponent tuples to coefficients.  Zero coefficients are
    never stored.  The coefficient ring is duck-typed: ints, Fractions and
    :class:`UniPoly` all work.
    """

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        t: dict[Exponent, object] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong arity for {nvars} variables")
            if coeff:
                t[tuple(exp)] = coeff
        self._t = t

    @classmethod
    def const(cls, nvars: int, value) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, index: int, nvars: int, coeff=1) -> MultiPoly:
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): coeff})

    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self._t)
        for exp, coeff in o._t.items():
            v = t.get(exp)
            v = coeff if v is None else v + coeff
            if v:
                t[exp] = v
            else:
                t.pop(exp, None)
        out = MultiPoly(self.nvars)
        out._t = t
        return out

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        out = MultiPoly(self.nvars)
        out._t = {e: -c for e, c in self._t.items()}
        return out

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            out = MultiPoly(self.nvars)
            out._t = {e: c * other for e, c in self._t.items() if c * other}
            return out
        o = self._lift(other)
        t: dict[Exponent, object] = {}
        for e1, c1 in self._t.items():
            for e2, c2 in o._t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                prod = c1 * c2
                t[e] = prod if v is None else v + prod
        return MultiPoly(self.nvars, t)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int) -> MultiPoly:
        result = MultiPoly.const(self.nvars, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._t == other._t
        return self == self._lift(other)

    __hash__ = None  # mutable-looking container semantics; not hashable

    def map_coeffs(self, fn) -> MultiPoly:
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self._t.items()})

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Rename variable ``i`` to ``perm[i]``."""
        t = {}
        for exp, coeff in self._t.items():
            new = [0] * self.nvars
            for i, k in enumerate(exp):
                new[perm[i]] = k
            t[tuple(new)] = coeff
        return MultiPoly(self.nvars, t)

    def evaluate(self, values: Sequence):
        """Substitute every variable; returns a value in the coefficient ring."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        total = 0
        for exp, coeff in self._t.items():
            term = coeff
            for v, k in zip(values, exp):
                if k:
                    term = term * (v**k)
            total = total + term
        return total

    def total_degree(self) -> int:
        return max((sum(e) for e in self._t), default=-1)

    def __repr__(self) -> str:
        body = ", ".join(f"{e}: {c}" for e, c in sorted(self._t.items()))
        return f"MultiPoly({self.nvars}, {{{body}}})"


class RationalFnU:
    """``numerator(u) / (1 - u)**pole_order`` in lowest terms.

    The numerator is never divisible by ``(1 - u)`` while ``pole_order > 0``.
    """

    __slots__ = ("numerator", "pole_order")

    def __init__(self, numerator: UniPoly, pole_order: int):
        if pole_order < 0:
            raise ValueError("pole order must be nonnegative")
        num = numerator
        d = pole_order
        if not num:
            d = 0
        while d > 0:
            quot, rem = num.divmod_linear(1)
            if rem:
                break
            # N = (u - 1) * quot, so N / (1 - u) = -quot
            num = -quot
            d -= 1
        self.numerator = num
        self.pole_order = d

    @classmethod
    def geometric(cls) -> RationalFnU:
        """``1 / (1 - u)``."""
        return cls(UniPoly.const(1), 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFnU):
            return NotImplemented
        return self.numerator == other.numerator and self.pole_order == other.pole_order

    def __hash__(self) -> int:
        return hash((self.numerator, self.pole_order))

    def __repr__(self) -> str:
        return f"RationalFnU(({self.numerator.to_string('u')}) / (1-u)^{self.pole_order})"

    def series(self, order: int) -> list[Fraction]:
        """Power-series coefficients of u^0 .. u^order."""
        d = self.pole_order
        # 1/(1-u)^d = sum_j C(j+d-1, d-1) u^j
        if d == 0:
            denom = [Fraction(1)] + [Fraction(0)] * order
        else:
            denom = [Fraction(1)]
            for j in range(1, order + 1):
                denom.append(denom[-1] * (j + d - 1) / j)
        out = []
        for j in range(order + 1):
            out.append(sum((self.numerator.coeff(i) * denom[j - i] for i in range(j + 1)), Fraction(0)))
        return out


def rfn_mul_u_ddu(f: RationalFnU) -> RationalFnU:
    """Apply ``u d/du`` to ``N(u)/(1-u)^d``.

    ``d/du [N (1-u)^-d] = (N' (1-u) + d N) / (1-u)^(d+1)``.
    """
    n, d = f.numerator, f.pole_order
    one_minus_u = UniPoly((1, -1))
    num = n.derivative() * one_minus_u + n * d
    return RationalFnU(num.shift(1), d + 1)


def rfn_substitute_u(f: RationalFnU, a: int) -> ScaledPoly:
    """Substitute ``u = (q - a)/q`` and return ``(poly in q, a**-d)``.

    With ``1 - u = a/q`` the function becomes
    ``a**-d * q**(d - deg N) * sum_j N_j (q - a)**j q**(deg N - j)``.
    Raises ``ValueError`` when the result is not a polynomial in ``q``.
    """
    if a < 1:
        raise ValueError(f"substitution parameter a must be a positive integer, got {a}")
    n, d = f.numerator, f.pole_order
    if not n:
        return ScaledPoly(UniPoly(), Fraction(1))
    deg = n.degree
    if d < deg:
        raise ValueError(f"numerator degree {deg} exceeds pole order {d}; not a polynomial in q")
    q_minus_a = UniPoly((-a, 1))
    body = UniPoly()
    for j, coeff in enumerate(n.coeffs):
        if coeff:
            body = body + (q_minus_a**j).shift(deg - j) * coeff
    return ScaledPoly(body.shift(d - deg), Fraction(1, a**d))
