"""Exact numbers of the form a + b*sqrt(3) with rational a, b.

Every density constant this package reports lives in Q(sqrt 3), so bounds can
be compared and printed exactly instead of through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@total_ordering
@dataclass(frozen=True)
class QSqrt3:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(Fraction(x))
        return NotImplemented

    def __add__(self, other):
        o = QSqrt3.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        o = QSqrt3.coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QSqrt3.coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def sign(self):
        # sign of a + b*sqrt(3) without floating point
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        return sa if d > 0 else (sb if d < 0 else 0)

    def __eq__(self, other):
        o = QSqrt3.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        o = QSqrt3.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(3)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        b = "sqrt(3)" if self.b == 1 else f"{self.b}*sqrt(3)"
        if self.a == 0:
            return b
        if self.b < 0:
            return f"{self.a} - {str(-self.b) + '*' if self.b != -1 else ''}sqrt(3)"
        return f"{self.a} + {b}"

    def to_json(self):
        return {"rational": str(self.a), "sqrt3": str(self.b), "float": float(self)}


SQRT3 = QSqrt3(0, 1)
