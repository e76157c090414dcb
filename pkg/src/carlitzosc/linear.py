"""F_q-linear polynomials sum_j u_j t**(q**j) with scalar coefficients.

Scalars may be ``Poly``, ``RatFunc`` or ``Laurent``; the class only needs
ring operations and the q-th power map ``frob`` from them.
"""

from __future__ import annotations

from typing import Iterable

from carlitzosc.algebra.field import GF
from carlitzosc.algebra.poly import Poly

__all__ = ["LinearPoly", "is_zero_scalar"]


def is_zero_scalar(s) -> bool:
    if isinstance(s, int):
        return s == 0
    return s.is_zero()


class LinearPoly:
    """Monomial representation u_0 t + u_1 t^q + u_2 t^(q^2) + ... of an element of X."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and is_zero_scalar(c[-1]):
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def t(cls, field: GF) -> "LinearPoly":
        return cls(field, [Poly.one(field)])

    @classmethod
    def monomial(cls, field: GF, j: int, coeff=None) -> "LinearPoly":
        """coeff * t^(q^j)."""
        one = Poly.one(field) if coeff is None else coeff
        return cls(field, [Poly.zero(field)] * j + [one])

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, j: int):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return Poly.zero(self.field)

    def degree_index(self) -> int:
        """Largest j with u_j != 0 (-1 for the zero function)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinearPoly") -> "LinearPoly":
        n = max(len(self), len(other))
        return LinearPoly(self.field, [self[j] + other[j] for j in range(n)])

    def __neg__(self) -> "LinearPoly":
        return LinearPoly(self.field, [-u for u in self.coeffs])

    def __sub__(self, other: "LinearPoly") -> "LinearPoly":
        return self + (-other)

    def scale(self, c) -> "LinearPoly":
        """Pointwise product c * phi for a scalar c."""
        return LinearPoly(self.field, [c * u for u in self.coeffs])

    def map_coeffs(self, fn) -> "LinearPoly":
        return LinearPoly(self.field, [fn(u) for u in self.coeffs])

    def frob(self) -> "LinearPoly":
        """phi**q = sum u_j**q t^(q^(j+1))."""
        if not self.coeffs:
            return self
        return LinearPoly(self.field, [Poly.zero(self.field)] + [u.frob() for u in self.coeffs])

    def __call__(self, t):
        """Evaluate at a scalar t (Poly, RatFunc or Laurent)."""
        acc = None
        tq = t
        for j, u in enumerate(self.coeffs):
            if j:
                tq = tq.frob()
            if is_zero_scalar(u):
                continue
            term = u * tq
            acc = term if acc is None else acc + term
        if acc is None:
            return t * 0
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearPoly):
            return NotImplemented
        if len(self) != len(other):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearPoly({self})"

    def __str__(self) -> str:
        from carlitzosc.serialize import format_scalar

        q = self.field.q
        terms = []
        for j, u in reversed(list(enumerate(self.coeffs))):
            if is_zero_scalar(u):
                continue
            mono = "t" if j == 0 else f"t^{q**j}"
            s = format_scalar(u)
            terms.append(mono if s == "1" else f"({s})*{mono}")
        return " + ".join(terms) if terms else "0"
