"""Truncated Laurent series in x**(1/d) over GF(q) with tracked precision.

A series stores ``denom`` d (a power of q), the exponent ``val`` of its first
stored term and the coefficients from there on, all in units of x**(1/d).
``prec`` is the absolute precision: the value is known modulo x**(prec/d).
``prec=None`` marks an exact Laurent polynomial.

Precision rules: sums keep the smaller precision, a product of z1 and z2 is
known to ``min(v1 + prec2, v2 + prec1)``.  Equality means equality at the
common precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from carlitzosc import kernels
from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.errors import DomainError, PrecisionExhausted, RamificationError

__all__ = ["Laurent", "rat_to_laurent", "abs_val", "qth_root", "frobenius"]


def _pmin(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _is_power_of(d: int, q: int) -> bool:
    while d % q == 0:
        d //= q
    return d == 1


class Laurent:
    __slots__ = ("field", "denom", "val", "coeffs", "prec")

    def __init__(
        self,
        field: GF,
        coeffs: Sequence[int] = (),
        val: int = 0,
        denom: int = 1,
        prec: int | None = None,
    ):
        if denom < 1 or not _is_power_of(denom, field.q):
            raise DomainError(f"ramification denominator {denom} is not a power of q={field.q}")
        c = list(coeffs)
        if prec is not None:
            c = c[: max(0, prec - val)]
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        c = c[lead:]
        val += lead
        if prec is None:
            while c and c[-1] == 0:
                c.pop()
            if not c:
                val = 0
        elif not c:
            val = prec
        q = field.q
        while denom > 1 and (prec is None or prec % q == 0) and (val % q == 0 or not c):
            if any(c[k] for k in range(len(c)) if k % q):
                break
            c = c[::q]
            val //= q
            if prec is not None:
                prec //= q
            denom //= q
        self.field = field
        self.denom = denom
        self.val = val
        self.coeffs = tuple(c)
        self.prec = prec

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: GF, prec: int | None = None, denom: int = 1) -> "Laurent":
        return cls(field, (), 0 if prec is None else prec, denom, prec)

    @classmethod
    def from_poly(cls, p: Poly, prec: int | None = None) -> "Laurent":
        return cls(p.field, p.coeffs, 0, 1, prec)

    @classmethod
    def x_power(cls, field: GF, num: int, den: int = 1, code: int = 1) -> "Laurent":
        return cls(field, (code,), num, den, None)

    @classmethod
    def from_ratfunc(cls, r: RatFunc, prec: int | None = None) -> "Laurent":
        """Expansion of r at x = 0; exact when the denominator is a monomial.

        ``prec`` is absolute, in units of x**(1/r.ram).
        """
        F = r.field
        vd = r.den.valuation()
        unit = r.den.coeffs[vd:]
        if len(unit) == 1:
            inv = F.inv(unit[0])
            return cls(F, kernels.scale(list(r.num.coeffs), inv, F), -vd, r.ram, prec)
        if prec is None:
            raise PrecisionExhausted(f"expansion of {r} needs an explicit precision")
        vn = r.num.valuation() or 0
        n = prec + vd  # coefficients of num/unit needed, counted from x^0
        if n <= vn:
            return cls.zero(F, prec, r.ram)
        inv = kernels.inverse_series(list(unit[:n]), n, F)
        c = kernels.mul(list(r.num.coeffs[:n]), inv, F)[:n]
        return cls(F, c, -vd, r.ram, prec)

    # -- queries ------------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return self.prec is None and not self.coeffs

    def is_zero_at_prec(self) -> bool:
        return not self.coeffs

    def valuation(self) -> Fraction | None:
        if not self.coeffs:
            if self.prec is None:
                return None
            raise PrecisionExhausted(
                f"series is zero to precision x^({Fraction(self.prec, self.denom)}); valuation unknown"
            )
        return Fraction(self.val, self.denom)

    def abs(self) -> AbsValue:
        return AbsValue(self.valuation())

    def precision(self) -> Fraction | None:
        """Absolute precision as a rational exponent of x."""
        return None if self.prec is None else Fraction(self.prec, self.denom)

    def coeff(self, exponent: Fraction) -> int:
        """Coefficient of x**exponent (must be below the precision)."""
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return 0
        k = int(e)
        if self.prec is not None and k >= self.prec:
            raise PrecisionExhausted(f"coefficient of x^({exponent}) is beyond the precision")
        i = k - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def truncate(self, prec: Fraction | int) -> "Laurent":
        """Forget everything from x**prec on (prec is a rational exponent of x)."""
        pr = Fraction(prec)
        d = self.denom * pr.denominator
        z = self._lift(d) if d != self.denom else self
        P = int(pr * d)
        return Laurent(z.field, z.coeffs, z.val, z.denom, _pmin(z.prec, P))

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, d: int) -> "Laurent":
        """Same value written over the finer denominator d."""
        k = d // self.denom
        if k == 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1) if self.coeffs else []
        out[::k] = self.coeffs
        obj = Laurent.__new__(Laurent)
        obj.field, obj.denom, obj.val, obj.coeffs = self.field, d, self.val * k, tuple(out)
        obj.prec = None if self.prec is None else self.prec * k
        return obj

    def _coerce(self, other, for_mul: bool) -> "Laurent | None":
        if isinstance(other, Laurent):
            if other.field != self.field:
                raise TypeError("series over different fields")
            return other
        if isinstance(other, int):
            other = Poly.const(self.field, self.field.from_int(other))
        if isinstance(other, Poly):
            return Laurent.from_poly(other)
        if isinstance(other, RatFunc):
            try:
                return Laurent.from_ratfunc(other)
            except PrecisionExhausted:
                if self.prec is None:
                    raise
            # precision the rational factor needs so that it does not limit the result
            P = Fraction(self.prec, self.denom)
            if for_mul:
                P = P - Fraction(self.val, self.denom) + other.valuation()
            Pr = P * other.ram
            return Laurent.from_ratfunc(other, int(-((-Pr) // 1)))
        return None

    def _common(self, other: "Laurent") -> tuple["Laurent", "Laurent"]:
        d = max(self.denom, other.denom)
        return self._lift(d), other._lift(d)

    def __add__(self, other):
        o = self._coerce(other, for_mul=False)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        P = _pmin(a.prec, b.prec)
        lo = min(a.val if a.coeffs else (a.prec if a.prec is not None else 0),
                 b.val if b.coeffs else (b.prec if b.prec is not None else 0))
        hi = max(a.val + len(a.coeffs), b.val + len(b.coeffs))
        if P is not None:
            hi = min(hi, P)
            lo = min(lo, P)
        n = max(0, hi - lo)
        out = [0] * n
        F = a.field
        addt, q = F.add_tab, F.q
        for z in (a, b):
            off = z.val - lo
            for i, c in enumerate(z.coeffs):
                j = off + i
                if 0 <= j < n and c:
                    out[j] = addt[out[j] * q + c]
        return Laurent(F, out, lo, a.denom, P)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        neg = self.field.neg_tab
        obj = Laurent.__new__(Laurent)
        obj.field, obj.denom, obj.val, obj.prec = self.field, self.denom, self.val, self.prec
        obj.coeffs = tuple(neg[c] for c in self.coeffs)
        return obj

    def __sub__(self, other):
        o = self._coerce(other, for_mul=False)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other, for_mul=False)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other, for_mul=True)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        F = a.field
        if a.is_zero() or b.is_zero():
            return Laurent.zero(F)
        va = a.val if a.coeffs else a.prec
        vb = b.val if b.coeffs else b.prec
        P = _pmin(None if a.prec is None else vb + a.prec, None if b.prec is None else va + b.prec)
        if not a.coeffs or not b.coeffs:
            return Laurent.zero(F, P, a.denom)
        ca, cb = list(a.coeffs), list(b.coeffs)
        if P is not None:
            n = P - va - vb
            ca, cb = ca[:n], cb[:n]
        return Laurent(F, kernels.mul(ca, cb, F), va + vb, a.denom, P)

    __rmul__ = __mul__

    def inverse(self, prec: int | None = None) -> "Laurent":
        """1/z.  ``prec`` (absolute, units of the own denominator) is required for
        exact non-monomial z and caps the precision otherwise."""
        if not self.coeffs:
            if self.prec is None:
                raise ZeroDivisionError("inverse of the exact zero series")
            raise PrecisionExhausted("inverse of a series that is zero at its precision")
        F = self.field
        v = self.val
        if self.prec is None and len(self.coeffs) == 1:
            return Laurent(F, (F.inv(self.coeffs[0]),), -v, self.denom, None)
        rel = None if self.prec is None else self.prec - v
        if prec is not None:
            rel = prec + v if rel is None else min(rel, prec + v)
        if rel is None:
            raise PrecisionExhausted("inverse of an exact non-monomial series needs a precision")
        if rel <= 0:
            return Laurent.zero(F, -v + rel, self.denom)
        inv = kernels.inverse_series(list(self.coeffs[:rel]), rel, F)
        return Laurent(F, inv, -v, self.denom, -v + rel)

    def div(self, other, prec: int | None = None) -> "Laurent":
        """self / other; ``prec`` is the absolute target when both are exact."""
        o = self._coerce(other, for_mul=True)
        a, b = self._common(o)
        if b.prec is None and len(b.coeffs) == 1:
            return a * b.inverse()
        if a.prec is not None:
            rel = a.prec - (a.val if a.coeffs else a.prec)
            return a * b.inverse(rel - b.val)
        if prec is None:
            raise PrecisionExhausted("exact division by a non-monomial series needs a precision")
        rel = prec + b.val - a.val
        return (a * b.inverse(rel - b.val)).truncate(Fraction(prec, a.denom))

    def __truediv__(self, other):
        return self.div(other)

    def __rtruediv__(self, other):
        o = self._coerce(other, for_mul=True)
        if o is None:
            return NotImplemented
        return o.div(self)

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        result = Laurent.from_poly(Poly.one(F))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frob(self, times: int = 1) -> "Laurent":
        """z**(q**times): exponents scale by q, coefficients are fixed."""
        z = self
        q = self.field.q
        for _ in range(times):
            if z.denom % q == 0 and z.denom > 1:
                z = Laurent(z.field, z.coeffs, z.val, z.denom // q, z.prec)
            else:
                out = [0] * ((len(z.coeffs) - 1) * q + 1) if z.coeffs else []
                out[::q] = z.coeffs
                z = Laurent(z.field, out, z.val * q, z.denom,
                            None if z.prec is None else z.prec * q)
        return z

    def qth_root(self, cap: int | None = None) -> "Laurent":
        """The unique w with w**q = z.  Same coefficients over denominator d*q."""
        out = Laurent(self.field, self.coeffs, self.val, self.denom * self.field.q, self.prec)
        if cap is not None and out.denom > cap:
            raise RamificationError(
                f"q-th root needs ramification denominator {out.denom} > cap {cap}"
            )
        return out

    # -- comparison -----------------------------------------------------------

    def agree(self, other) -> tuple[bool, Fraction | None]:
        """(equal at common precision, that precision as an exponent of x)."""
        o = self._coerce(other, for_mul=False)
        d = self - o
        return (not d.coeffs), d.precision()

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Laurent, Poly, RatFunc, int)):
            return NotImplemented
        return self.agree(other)[0]

    __hash__ = None

    def __repr__(self) -> str:
        return f"Laurent({self})"

    def __str__(self) -> str:
        from carlitzosc.serialize import format_laurent

        return format_laurent(self)


def rat_to_laurent(r: RatFunc, prec: int) -> Laurent:
    """Expansion of r modulo x**prec (units of x**(1/r.ram))."""
    F = r.field
    if r.is_zero():
        return Laurent.zero(F, prec, r.ram)
    vd = r.den.valuation()
    unit = r.den.coeffs[vd:]
    if len(unit) == 1:
        return Laurent.from_ratfunc(r).truncate(Fraction(prec, r.ram))
    return Laurent.from_ratfunc(r, prec)


def abs_val(z) -> AbsValue:
    return z.abs()


def qth_root(z, cap: int | None = None):
    return z.qth_root(cap)


def frobenius(z):
    return z.frob()
