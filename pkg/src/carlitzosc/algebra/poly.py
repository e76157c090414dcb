"""Dense univariate polynomials over GF(q) in the indeterminate x."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from carlitzosc import kernels
from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF
from carlitzosc.errors import ConsistencyError

__all__ = ["Poly"]


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Element of F_q[x].  Immutable; ``coeffs`` are codes, low degree first, trimmed."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: GF, coeffs: Iterable[int] = ()):
        self.field = field
        self.coeffs = tuple(_trim(list(coeffs)))
        self._hash = None

    @classmethod
    def _raw(cls, field: GF, coeffs: list[int]) -> "Poly":
        # caller guarantees trimmed codes
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: GF) -> "Poly":
        return cls._raw(field, [])

    @classmethod
    def one(cls, field: GF) -> "Poly":
        return cls._raw(field, [1])

    @classmethod
    def const(cls, field: GF, code: int) -> "Poly":
        return cls._raw(field, [code] if code else [])

    @classmethod
    def x(cls, field: GF) -> "Poly":
        return cls._raw(field, [0, 1])

    @classmethod
    def monomial(cls, field: GF, k: int, code: int = 1) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent in a polynomial")
        return cls._raw(field, [0] * k + [code]) if code else cls._raw(field, [])

    @classmethod
    def from_ints(cls, field: GF, ints: Sequence[int]) -> "Poly":
        """Coefficients given as integers, reduced into F_p (gamma = 1 style)."""
        return cls(field, [field.from_int(n) for n in ints])

    # -- basic queries ------------------------------------------------------

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def valuation(self) -> int | None:
        """x-adic order; None for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def abs(self) -> AbsValue:
        v = self.valuation()
        return AbsValue(None if v is None else Fraction(v))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly.const(self.field, self.field.from_int(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        F = self.field
        if F.gamma == 1:
            p = F.p
            out = [(x + y) % p for x, y in zip(a, b)]
        else:
            t, q = F.add_tab, F.q
            out = [t[x * q + y] for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly._raw(F, _trim(out))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        neg = self.field.neg_tab
        return Poly._raw(self.field, [neg[c] for c in self.coeffs])

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
        return Poly._raw(self.field, kernels.mul(list(self.coeffs), list(o.coeffs), self.field))

    __rmul__ = __mul__

    def scale(self, code: int) -> "Poly":
        return Poly._raw(self.field, kernels.scale(list(self.coeffs), code, self.field))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        quo, rem = kernels.divmod_(list(self.coeffs), list(o.coeffs), self.field)
        return Poly._raw(self.field, quo), Poly._raw(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient, asserting the division is exact."""
        quo, rem = divmod(self, other)
        if rem:
            raise ConsistencyError(f"non-exact polynomial division (remainder degree {rem.degree()})")
        return quo

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, times: int = 1) -> "Poly":
        """The q**times power: coefficients are fixed, exponents scale."""
        if times == 0 or len(self.coeffs) <= 1:
            return self
        step = self.field.q**times
        out = [0] * ((len(self.coeffs) - 1) * step + 1)
        out[::step] = self.coeffs
        return Poly._raw(self.field, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k (k >= 0)."""
        if not self.coeffs or k == 0:
            return self
        return Poly._raw(self.field, [0] * k + list(self.coeffs))

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero when both are zero)."""
        return Poly._raw(self.field, kernels.gcd(list(self.coeffs), list(other.coeffs), self.field))

    def compose(self, arg: "Poly") -> "Poly":
        """self(arg) for a polynomial argument (Horner)."""
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * arg + Poly.const(self.field, c)
        return acc

    __call__ = compose

    def eval_elem(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    # -- identity / display ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly.const(self.field, self.field.from_int(other)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        from carlitzosc.serialize import format_poly

        return f"Poly({format_poly(self)})"

    def __str__(self) -> str:
        from carlitzosc.serialize import format_poly

        return format_poly(self)

    def __reduce__(self):
        return (Poly, (self.field, self.coeffs))
