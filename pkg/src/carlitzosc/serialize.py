"""Text and JSON forms of field elements, polynomials, rational functions and series.

Grammar (ASCII only):

* element of F_q: ``3`` when gamma = 1, else the digit list ``[d0,d1,...]``;
* polynomial: sparse ``c*x^k`` terms in descending k, ``c*`` omitted for c = 1,
  e.g. ``x^4 + 2*x + 1``;
* rational function: ``(num)/(den)``; in a ramified variable exponents are
  rationals ``x^(3/2)``;
* series: ``x^(v/d)*(c0 + c1*x^(1/d) + ...) + O(x^(prec/d))`` in text, and
  ``{"denom": d, "val": v, "coeffs": [...], "prec": n}`` in JSON.

``parse_scalar`` reads the same grammar back (plus ``-``, ``/`` and
parenthesised sub-expressions) and is what the CLI uses for its arguments.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from carlitzosc.algebra.field import GF
from carlitzosc.algebra.laurent import Laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc

__all__ = [
    "format_elem", "parse_elem", "format_poly", "format_ratfunc", "format_laurent",
    "format_scalar", "to_json", "from_json", "parse_scalar", "ParseError",
]


class ParseError(ValueError):
    pass


# -- formatting ---------------------------------------------------------------


def format_elem(F: GF, code: int) -> str:
    if F.gamma == 1:
        return str(code)
    return "[" + ",".join(str(c) for c in F.coords(code)) + "]"


def _x_power(e: Fraction, var: str = "x") -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    if e.denominator == 1 and e > 0:
        return f"{var}^{e.numerator}"
    return f"{var}^({e})"


def _term(F: GF, code: int, e: Fraction, var: str = "x") -> str:
    xs = _x_power(e, var)
    if not xs:
        return format_elem(F, code)
    if code == 1:
        return xs
    return f"{format_elem(F, code)}*{xs}"


def _sum(terms: list[str]) -> str:
    return " + ".join(terms) if terms else "0"


def format_poly(p: Poly, ram: int = 1, var: str = "x") -> str:
    terms = [
        _term(p.field, c, Fraction(k, ram), var)
        for k, c in reversed(list(enumerate(p.coeffs)))
        if c
    ]
    return _sum(terms)


def format_ratfunc(r: RatFunc) -> str:
    num = format_poly(r.num, r.ram)
    if r.den.is_one():
        return num
    return f"({num})/({format_poly(r.den, r.ram)})"


def format_laurent(z: Laurent) -> str:
    F, d = z.field, z.denom
    inner = [_term(F, c, Fraction(k, d)) for k, c in enumerate(z.coeffs) if c]
    body = _sum(inner)
    if z.coeffs and z.val:
        lead = _x_power(Fraction(z.val, d))
        body = f"{lead}*({body})" if len(inner) > 1 or inner[0] != "1" else lead
    elif len(inner) > 1:
        body = f"({body})"
    if z.prec is None:
        return body
    return f"{body} + O(x^({Fraction(z.prec, d)}))"


def format_scalar(s) -> str:
    if isinstance(s, Poly):
        return format_poly(s)
    if isinstance(s, RatFunc):
        return format_ratfunc(s)
    if isinstance(s, Laurent):
        return format_laurent(s)
    raise TypeError(f"cannot format {type(s).__name__}")


# -- JSON -----------------------------------------------------------------------


def _elem_json(F: GF, code: int):
    return code if F.gamma == 1 else list(F.coords(code))


def _elem_from_json(F: GF, v) -> int:
    if isinstance(v, list):
        return F.from_coords(v)
    if F.gamma != 1 or not 0 <= v < F.p:
        raise ParseError(f"element {v!r} is not a valid code for {F}")
    return v


def to_json(s) -> Any:
    """JSON-ready form; every value re-parses with ``from_json`` to an equal value."""
    if isinstance(s, Poly):
        return {"poly": format_poly(s)}
    if isinstance(s, RatFunc):
        return {"num": format_poly(s.num), "den": format_poly(s.den), "ram": s.ram}
    if isinstance(s, Laurent):
        return {
            "denom": s.denom,
            "val": s.val,
            "coeffs": [_elem_json(s.field, c) for c in s.coeffs],
            "prec": s.prec,
        }
    raise TypeError(f"cannot serialize {type(s).__name__}")


def from_json(obj: dict, F: GF):
    if "poly" in obj:
        return _as_poly(parse_scalar(obj["poly"], F))
    if "num" in obj:
        num = _as_poly(parse_scalar(obj["num"], F))
        den = _as_poly(parse_scalar(obj["den"], F))
        return RatFunc(num, den, obj.get("ram", 1))
    if "denom" in obj:
        coeffs = [_elem_from_json(F, c) for c in obj["coeffs"]]
        return Laurent(F, coeffs, obj["val"], obj["denom"], obj["prec"])
    raise ParseError(f"unrecognised JSON value {obj!r}")


def _as_poly(v) -> Poly:
    if isinstance(v, RatFunc) and v.is_poly():
        return v.as_poly()
    raise ParseError(f"{v} is not a polynomial")


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[\d,\s]*\])|([xO])|(\*\*|[-+*/^()]))")


def _tokenize(s: str) -> list[str]:
    pos, out = 0, []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos]!r} at {pos} in {s!r}")
        tok = next(g for g in m.groups() if g is not None)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, F: GF):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = F
        self.prec: Fraction | None = None

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self) -> RatFunc:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()
            if self.peek() == "O":
                self.big_o()
                continue
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def big_o(self) -> None:
        self.take("O")
        self.take("(")
        self.take("x")
        e = Fraction(1)
        if self.peek() == "^":
            self.take()
            e = self.exponent()
        self.take(")")
        self.prec = e if self.prec is None else min(self.prec, e)

    def term(self) -> RatFunc:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            f = self.factor()
            acc = acc * f if op == "*" else acc / f
        return acc

    def exponent(self) -> Fraction:
        if self.peek() == "(":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            num = int(self.take())
            den = 1
            if self.peek() == "/":
                self.take()
                den = int(self.take())
            self.take(")")
            e = Fraction(num, den)
            return -e if neg else e
        if self.peek() == "-":
            self.take()
            return -Fraction(int(self.take()))
        return Fraction(int(self.take()))

    def factor(self) -> RatFunc:
        F = self.F
        tok = self.peek()
        if tok == "x":
            self.take()
            e = self.exponent() if self.peek() == "^" and self.take() else Fraction(1)
            den = e.denominator
            d = 1
            while d < den:
                d *= F.q
            if d != den:
                raise ParseError(f"exponent {e}: denominators must be powers of q={F.q}")
            return RatFunc.x_power(F, e.numerator, den)
        if tok == "(":
            self.take()
            v = self.expr()
            self.take(")")
            if self.peek() == "^":
                self.take()
                e = self.exponent()
                if e.denominator != 1:
                    raise ParseError("only x may carry a fractional exponent")
                v = v ** int(e)
            return v
        if tok is not None and tok.startswith("["):
            self.take()
            digits = [int(d) for d in tok[1:-1].split(",") if d.strip()]
            return RatFunc.const(F, F.from_coords(digits))
        if tok is not None and tok.isdigit():
            self.take()
            return RatFunc.const(F, F.from_int(int(tok)))
        raise ParseError(f"unexpected token {tok!r}")


def parse_scalar(text: str, F: GF) -> RatFunc | Laurent:
    """Parse an element of F_q(x^(1/d)); a trailing ``O(x^n)`` makes it a truncated series."""
    p = _Parser(text, F)
    v = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input at token {p.peek()!r}")
    if p.prec is None:
        return v
    P = p.prec * v.ram
    ceil = -((-P.numerator) // P.denominator)
    return Laurent.from_ratfunc(v, ceil).truncate(p.prec)


def parse_elem(text: str, F: GF) -> int:
    text = text.strip()
    if text.startswith("["):
        return F.from_coords([int(d) for d in text[1:-1].split(",") if d.strip()])
    return F.from_int(int(text))
