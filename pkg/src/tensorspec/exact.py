"""Exact Gaussian-rational arithmetic.

A :class:`GaussianRational` is a complex number whose real and imaginary
parts are rationals.  Values are stored as an integer triple ``(a, b, d)``
meaning ``(a + b i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``, which is
a canonical form: two values are equal exactly when their triples are.
The reduced real and imaginary parts are available as :class:`Fraction`.

No floating point is used anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Optional, Union

__all__ = [
    "GaussianRational",
    "gq",
    "gq_arith",
    "gq_abs_sq_lt_one",
    "geom_member",
    "parse_gq",
]

Scalar = Union["GaussianRational", int, Fraction]


def _canon(a: int, b: int, d: int) -> tuple[int, int, int]:
    if d == 1:
        return a, b, d
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(a, b, d)
    if g > 1:
        a, b, d = a // g, b // g, d // g
    return a, b, d


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts, immutable."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._a, self._b, self._d = _canon(a, b, d)

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._a, obj._b, obj._d = _canon(a, b, d)
        return obj

    @classmethod
    def coerce(cls, x: Scalar) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        if isinstance(x, Fraction):
            return cls._raw(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    # -- parts -------------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def triple(self) -> tuple[int, int, int]:
        return self._a, self._b, self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._d)

    def abs_sq(self) -> Fraction:
        """``|z|**2`` as an exact rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Scalar) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if self._d == o._d:
            return GaussianRational._raw(self._a + o._a, self._b + o._b, self._d)
        return GaussianRational._raw(
            self._a * o._d + o._a * self._d,
            self._b * o._d + o._b * self._d,
            self._d * o._d,
        )

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self._a, -self._b, self._d)

    def __sub__(self, other: Scalar) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Scalar) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, d = self._a, self._b, self._d
        c, e, f = o._a, o._b, o._d
        return GaussianRational._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if self.is_zero():
            raise ZeroDivisionError("GaussianRational division by zero")
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        # 1 / ((a+bi)/d) = d (a - bi) / (a^2 + b^2)
        return GaussianRational._raw(d * a, -d * b, n)

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "GaussianRational":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ONE
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == GaussianRational.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._d))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def __str__(self) -> str:
        re_, im_ = self.re, self.im
        if im_ == 0:
            return str(re_)
        if im_ == 1:
            ims = "i"
        elif im_ == -1:
            ims = "-i"
        else:
            ims = f"{im_}i"
        if re_ == 0:
            return ims
        if ims.startswith("-"):
            return f"{re_}{ims}"
        return f"{re_}+{ims}"


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def gq(re: Union[int, Fraction, str] = 0, im: Union[int, Fraction] = 0) -> GaussianRational:
    """Shorthand constructor; a string argument is parsed with :func:`parse_gq`."""
    if isinstance(re, str):
        return parse_gq(re)
    return GaussianRational(re, im)


def gq_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def gq_abs_sq_lt_one(q: GaussianRational) -> bool:
    return q.abs_sq() < 1


def geom_member(
    c: GaussianRational, r: GaussianRational, q: GaussianRational, p: GaussianRational
) -> Optional[int]:
    """Return ``n >= 1`` with ``p == c + r*q**n``, or ``None``.

    Requires ``r != 0`` and ``0 < |q|**2 < 1``.  The terms ``r*q**n`` shrink
    strictly in modulus, so the search stops as soon as the current term is
    smaller than ``|p - c|``.
    """
    if r.is_zero():
        raise ValueError("geom_member requires r != 0")
    qa = q.abs_sq()
    if not 0 < qa < 1:
        raise ValueError("geom_member requires 0 < |q|^2 < 1")
    target = p - c
    if target.is_zero():
        return None
    target_sq = target.abs_sq()
    term = r * q
    n = 1
    while True:
        if term == target:
            return n
        if term.abs_sq() < target_sq:
            return None
        term = term * q
        n += 1


_RAT = r"[0-9]+(?:/[0-9]+)?"
_GQ_RE = re.compile(
    rf"""
    \A\s*
    (?:
        (?P<re>[+-]?{_RAT})
        (?:\s*(?P<sign>[+-])\s*(?P<im>{_RAT})?\s*i)?
      |
        (?P<pure>[+-]?(?:{_RAT})?)\s*i
    )
    \s*\Z
    """,
    re.VERBOSE,
)


def parse_gq(text: str) -> GaussianRational:
    """Parse ``a/b + c/d i`` style text (both parts optional as usual).

    Accepted forms include ``3``, ``-1/2``, ``i``, ``-2/3i``, ``1/2-1/2i``
    and ``1 + 2i``.
    """
    m = _GQ_RE.match(text)
    if m is None:
        raise ValueError(f"not a Gaussian rational: {text!r}")
    if m.group("re") is not None:
        re_ = Fraction(m.group("re"))
        im_ = Fraction(0)
        if m.group("sign") is not None:
            im_ = Fraction(m.group("im") or 1)
            if m.group("sign") == "-":
                im_ = -im_
        return GaussianRational(re_, im_)
    pure = m.group("pure")
    if pure in ("", "+"):
        return I
    if pure == "-":
        return -I
    return GaussianRational(0, Fraction(pure))
