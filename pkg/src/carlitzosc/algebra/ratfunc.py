"""Exact rational functions over GF(q), optionally in a ramified variable.

``RatFunc(num, den, ram)`` is ``num(x**(1/ram)) / den(x**(1/ram))`` with
``ram`` a power of q.  Ramified values appear only through q-th roots: in
characteristic p the root of ``sum a_k X**k`` is ``sum a_k X**(k/q)`` because
``a**q = a`` on F_q, so taking a root just multiplies ``ram`` by q.
"""

from __future__ import annotations

from fractions import Fraction

from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF
from carlitzosc.algebra.poly import Poly
from carlitzosc.errors import RamificationError

__all__ = ["RatFunc"]


def _spread(p: Poly, k: int) -> Poly:
    """Substitute X -> X**k."""
    if k == 1 or len(p.coeffs) <= 1:
        return p
    out = [0] * ((len(p.coeffs) - 1) * k + 1)
    out[::k] = p.coeffs
    return Poly._raw(p.field, out)


def _compressible(p: Poly, q: int) -> bool:
    return all(c == 0 for k, c in enumerate(p.coeffs) if k % q)


class RatFunc:
    """Reduced quotient num/den with monic den; zero is 0/1 with ram 1."""

    __slots__ = ("num", "den", "ram", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, ram: int = 1, *, reduced: bool = False):
        F = num.field
        if den is None:
            den = Poly.one(F)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den, ram = num, Poly.one(F), 1
        elif not reduced:
            if not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.lead()
                if lc != 1:
                    inv = F.inv(lc)
                    num, den = num.scale(inv), den.scale(inv)
        q = F.q
        while ram > 1 and _compressible(num, q) and _compressible(den, q):
            num = Poly._raw(F, list(num.coeffs[::q]))
            den = Poly._raw(F, list(den.coeffs[::q]))
            ram //= q
        self.num, self.den, self.ram = num, den, ram
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.field), 1, reduced=True)

    @classmethod
    def const(cls, field: GF, code: int) -> "RatFunc":
        return cls.from_poly(Poly.const(field, code))

    @classmethod
    def zero(cls, field: GF) -> "RatFunc":
        return cls.from_poly(Poly.zero(field))

    @classmethod
    def one(cls, field: GF) -> "RatFunc":
        return cls.from_poly(Poly.one(field))

    @classmethod
    def x_power(cls, field: GF, num: int, den: int = 1) -> "RatFunc":
        """x**(num/den) for den a power of q; ``num`` may itself be a Fraction."""
        e = Fraction(num) / den
        num, den = e.numerator, e.denominator
        if num >= 0:
            return cls(Poly.monomial(field, num), None, den, reduced=True)
        return cls(Poly.one(field), Poly.monomial(field, -num), den, reduced=True)

    @property
    def field(self) -> GF:
        return self.num.field

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.ram == 1 and self.den.is_one()

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial in x")
        return self.num

    def valuation(self) -> Fraction | None:
        """x-adic valuation as a rational number; None for zero."""
        vn = self.num.valuation()
        if vn is None:
            return None
        return Fraction(vn - self.den.valuation(), self.ram)

    def abs(self) -> AbsValue:
        return AbsValue(self.valuation())

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise TypeError("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        if isinstance(other, int):
            return RatFunc.from_poly(Poly.const(self.field, self.field.from_int(other)))
        return None

    def _lift(self, ram: int) -> tuple[Poly, Poly]:
        k = ram // self.ram
        return _spread(self.num, k), _spread(self.den, k)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        ram = max(self.ram, o.ram)
        a, b = self._lift(ram)
        c, d = o._lift(ram)
        if b == d:
            return RatFunc(a + c, b, ram)
        if b.is_one():
            return RatFunc(a * d + c, d, ram, reduced=True)
        if d.is_one():
            return RatFunc(a + c * b, b, ram, reduced=True)
        g = b.gcd(d)
        if g.is_one():
            # coprime monic denominators: the sum of reduced fractions is reduced
            return RatFunc(a * d + c * b, b * d, ram, reduced=True)
        bg, dg = b.exact_div(g), d.exact_div(g)
        return RatFunc(a * dg + c * bg, b * dg, ram)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, self.ram, reduced=True)

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc.zero(self.field)
        ram = max(self.ram, o.ram)
        a, b = self._lift(ram)
        c, d = o._lift(ram)
        if b.is_one() and d.is_one():
            return RatFunc(a * c, b, ram, reduced=True)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc(a * c, b * d, ram, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        lc = self.num.lead()
        inv = self.field.inv(lc)
        return RatFunc(self.den.scale(inv), self.num.scale(inv), self.ram, reduced=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, self.ram, reduced=True)

    def frob(self, times: int = 1) -> "RatFunc":
        """q**times power; exact and gcd-preserving in characteristic p."""
        q = self.field.q
        num, den, ram = self.num, self.den, self.ram
        for _ in range(times):
            if ram > 1:
                ram //= q
            else:
                num, den = num.frob(), den.frob()
        return RatFunc(num, den, ram, reduced=True)

    def qth_root(self, cap: int | None = None) -> "RatFunc":
        out = RatFunc(self.num, self.den, self.ram * self.field.q, reduced=True)
        if cap is not None and out.ram > cap:
            raise RamificationError(
                f"q-th root needs ramification denominator {out.ram} > cap {cap}"
            )
        return out

    # -- identity / display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, int)):
            other = self._coerce(other)
        if isinstance(other, RatFunc):
            return (self.num, self.den, self.ram) == (other.num, other.den, other.ram)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den, self.ram))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        from carlitzosc.serialize import format_ratfunc

        return format_ratfunc(self)

    def __reduce__(self):
        return (RatFunc, (self.num, self.den, self.ram))
