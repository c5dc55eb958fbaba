"""Exact scalars: Gaussian rationals.

Everything in this package is computed over Q(i), complex numbers whose
real and imaginary parts are arbitrary-precision rationals.  Arithmetic
is exact, so equality of scalars (and hence of matrices, algebras and
evaluations) is decidable structural equality; no tolerances appear
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


def _norm(x: Rat) -> Rat:
    # Integral values are stored as plain int so the common all-integer
    # paths never pay for gcd normalization and the form stays canonical.
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _as_rat(x) -> Rat:
    if isinstance(x, (int, Fraction)):
        return _norm(x)
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not a rational component: {x!r}")


class Scalar:
    """An element of Q(i), kept in lowest terms with positive denominators."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat | str = 0, im: Rat | str = 0):
        object.__setattr__(self, "re", _as_rat(re))
        object.__setattr__(self, "im", _as_rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        return NotImplemented

    def __add__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def inv(self) -> "Scalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return Scalar(Fraction(self.re) / n, -Fraction(self.im) / n)

    def __truediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = Scalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # Real values hash like their int/Fraction counterparts, keeping
        # the hash/eq contract when a Scalar(2) meets a literal 2.
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if im == 1:
            imag = "i"
        elif im == -1:
            imag = "-i"
        else:
            imag = f"{im} i"
        if re == 0:
            return imag
        if im > 0:
            return f"{re}+{'i' if im == 1 else f'{im} i'}"
        return f"{re}-{'i' if im == -1 else f'{-im} i'}"

    def __repr__(self):
        return f"Scalar({self})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def as_scalar(x) -> Scalar:
    """Coerce an int, Fraction or Scalar to a Scalar."""
    s = Scalar._coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return s
