"""Exact Gaussian-rational scalars.

The algebra layer runs on two interchangeable coefficient domains: double
precision ``complex`` (the float backend) and :class:`QI`, rationals with a
formal imaginary unit adjoined (the exact backend).  All structural sign
computations stay in integers, so identities proved exactly here hold
verbatim in the float backend up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QI:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: Rational = 0, im: Rational = 0) -> "QI":
        return QI(Fraction(re), Fraction(im))

    @staticmethod
    def coerce(x) -> "QI":
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(Fraction(x), Fraction(0))
        raise TypeError(f"cannot coerce {type(x).__name__} to QI")

    def __add__(self, other) -> "QI":
        o = QI.coerce(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "QI":
        o = QI.coerce(other)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "QI":
        return QI.coerce(other) - self

    def __mul__(self, other) -> "QI":
        o = QI.coerce(other)
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QI":
        o = QI.coerce(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero QI")
        return QI((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        return f"QI({self.re}, {self.im})"


QI_ZERO = QI.of(0)
QI_ONE = QI.of(1)
QI_I = QI.of(0, 1)
