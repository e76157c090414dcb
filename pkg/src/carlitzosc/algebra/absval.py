"""Absolute values q^(-e) with rational exponents, compared as real numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

__all__ = ["AbsValue"]


@total_ordering
@dataclass(frozen=True)
class AbsValue:
    """``|z| = q**(-exponent)``; ``exponent is None`` encodes ``|0| = 0``."""

    exponent: Fraction | None

    @classmethod
    def of_valuation(cls, v) -> "AbsValue":
        return cls(None if v is None else Fraction(v))

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def pair(self) -> tuple[int, int] | None:
        """(num, den) with |z| = q^(-num/den), lowest terms; None for zero."""
        if self.exponent is None:
            return None
        return self.exponent.numerator, self.exponent.denominator

    def __lt__(self, other: "AbsValue") -> bool:
        if self.exponent is None:
            return other.exponent is not None
        if other.exponent is None:
            return False
        return self.exponent > other.exponent

    def __mul__(self, other: "AbsValue") -> "AbsValue":
        if self.exponent is None or other.exponent is None:
            return AbsValue(None)
        return AbsValue(self.exponent + other.exponent)

    def __pow__(self, n) -> "AbsValue":
        if self.exponent is None:
            return AbsValue(None)
        return AbsValue(self.exponent * Fraction(n))

    def __str__(self) -> str:
        if self.exponent is None:
            return "0"
        if self.exponent == 0:
            return "1"
        return f"q^({-self.exponent})"


AbsValue.ONE = AbsValue(Fraction(0))
AbsValue.ZERO = AbsValue(None)
