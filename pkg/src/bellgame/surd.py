"""Exact numbers of the form ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QuadraticSurd:
    rational: Fraction
    sqrt2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "sqrt2", Fraction(self.sqrt2))

    def __float__(self) -> float:
        return float(self.rational) + float(self.sqrt2) * SQRT2

    def _coerce(self, other) -> "QuadraticSurd":
        return other if isinstance(other, QuadraticSurd) else QuadraticSurd(Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadraticSurd(self.rational + o.rational, self.sqrt2 + o.sqrt2)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.rational, -self.sqrt2)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadraticSurd(
            self.rational * o.rational + 2 * self.sqrt2 * o.sqrt2,
            self.rational * o.sqrt2 + self.sqrt2 * o.rational,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign, decided by comparing squares."""
        a, b = self.rational, self.sqrt2
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # Opposite signs: the larger of a^2 and 2b^2 wins.
        dominant = a if a * a > 2 * b * b else b
        return 1 if dominant > 0 else -1

    def __str__(self) -> str:
        """``(p + q√2)/r`` over a common denominator."""
        den = math.lcm(self.rational.denominator, self.sqrt2.denominator)
        p = self.rational.numerator * (den // self.rational.denominator)
        q = self.sqrt2.numerator * (den // self.sqrt2.denominator)
        if q == 0:
            body = f"{p}"
        elif p == 0:
            body = f"{q}√2"
        else:
            body = f"{p} {'+' if q > 0 else '-'} {abs(q)}√2"
        return body if den == 1 else f"({body})/{den}"
