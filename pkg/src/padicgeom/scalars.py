"""Exact scalars and the multiplicative value group p^Q u {0}.

Scalars are plain ``fractions.Fraction`` values; the prime p of the ambient
valued field is passed explicitly (it is fixed per document / computation).
Norms, radii and thresholds are ``NormValue`` instances: either the zero
norm or an exact power p^e with rational exponent e.  Every comparison is
exact; nothing in this package ever goes through floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rational = Union[int, Fraction]

INFINITY = float("inf")  # valuation of 0


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def valuation(a: Rational, p: int):
    """p-adic valuation v_p(a) of a rational number; inf for a = 0.

    >>> valuation(4, 2)
    2
    >>> valuation(Fraction(6, 5), 3)
    1
    >>> valuation(Fraction(1, 2), 2)
    -1
    """
    if p < 2:
        raise ValueError("prime must be >= 2")
    a = _as_fraction(a)
    if a == 0:
        return INFINITY
    v = 0
    n = a.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = a.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class NormValue:
    """An element of the value group p^Q u {0}, stored as the exponent.

    ``exp is None`` encodes the zero norm.  The total order and the group
    law never need to know p (p >= 2 makes p^e strictly increasing in e),
    so instances are prime-agnostic; only text rendering takes p.
    """

    exp: Optional[Fraction]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "NormValue":
        return _ZERO

    @staticmethod
    def one() -> "NormValue":
        return _ONE

    @staticmethod
    def power(exp: Rational) -> "NormValue":
        return NormValue(_as_fraction(exp))

    @staticmethod
    def of_scalar(a: Rational, p: int) -> "NormValue":
        """|a| = p^(-v_p(a)); the norm of a rational scalar."""
        a = _as_fraction(a)
        if a == 0:
            return _ZERO
        return NormValue(Fraction(-valuation(a, p)))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    # -- group law ---------------------------------------------------------

    def __mul__(self, other: "NormValue") -> "NormValue":
        if self.exp is None or other.exp is None:
            return _ZERO
        return NormValue(self.exp + other.exp)

    def __truediv__(self, other: "NormValue") -> "NormValue":
        if other.exp is None:
            raise ZeroDivisionError("division by the zero norm")
        if self.exp is None:
            return _ZERO
        return NormValue(self.exp - other.exp)

    def __pow__(self, k: Rational) -> "NormValue":
        k = _as_fraction(k)
        if self.exp is None:
            if k <= 0:
                raise ZeroDivisionError("0 raised to a non-positive power")
            return _ZERO
        return NormValue(self.exp * k)

    def inverse(self) -> "NormValue":
        return _ONE / self

    # -- total order: zero < every power; powers ordered by exponent --------

    def __lt__(self, other: "NormValue") -> bool:
        if self.exp is None:
            return other.exp is not None
        if other.exp is None:
            return False
        return self.exp < other.exp

    def __le__(self, other: "NormValue") -> bool:
        return self == other or self < other

    def __gt__(self, other: "NormValue") -> bool:
        return other < self

    def __ge__(self, other: "NormValue") -> bool:
        return other <= self

    def compare_fraction(self, c: Rational, p: int) -> int:
        """Exact three-way comparison of this norm against a positive
        rational constant c (as a real number): -1, 0 or +1.

        p^(u/v) vs c is decided as the integer comparison p^u vs c^v.
        """
        c = _as_fraction(c)
        if c <= 0:
            raise ValueError("comparison constant must be positive")
        if self.exp is None:
            return -1
        u, v = self.exp.numerator, self.exp.denominator
        lhs = Fraction(p) ** u
        rhs = c ** v
        return (lhs > rhs) - (lhs < rhs)

    # -- text form: `p^<rational>` or `0` -----------------------------------

    def text(self, p: int) -> str:
        if self.exp is None:
            return "0"
        e = self.exp
        if e.denominator == 1:
            return f"{p}^{e.numerator}"
        return f"{p}^{e.numerator}/{e.denominator}"

    def __repr__(self) -> str:
        if self.exp is None:
            return "NormValue(0)"
        return f"NormValue(p^{self.exp})"


_ZERO = NormValue(None)
_ONE = NormValue(Fraction(0))

_NORM_RE = re.compile(r"^(\d+)\^(-?\d+)(?:/(\d+))?$")


def parse_norm(text: str, p: int) -> NormValue:
    """Parse a norm literal: `0` or `p^q` with q a rational (e.g. `2^-3/2`)."""
    text = text.strip()
    if text == "0":
        return _ZERO
    if text == "1":
        return _ONE
    m = _NORM_RE.match(text)
    if not m:
        raise ValueError(f"bad norm literal: {text!r}")
    base = int(m.group(1))
    if base != p:
        raise ValueError(f"norm literal base {base} does not match prime {p}")
    num = int(m.group(2))
    den = int(m.group(3)) if m.group(3) else 1
    return NormValue(Fraction(num, den))


def parse_scalar(text: str) -> Fraction:
    """Parse a scalar literal: `<int>` or `<int>/<int>`."""
    return Fraction(text.strip())


def scalar_text(a: Rational) -> str:
    a = _as_fraction(a)
    if a.denominator == 1:
        return str(a.numerator)
    return f"{a.numerator}/{a.denominator}"


def nv_max(*vals: NormValue) -> NormValue:
    out = _ZERO
    for v in vals:
        if out < v:
            out = v
    return out


def nv_min(*vals: NormValue) -> NormValue:
    if not vals:
        raise ValueError("nv_min of nothing")
    out = vals[0]
    for v in vals[1:]:
        if v < out:
            out = v
    return out
