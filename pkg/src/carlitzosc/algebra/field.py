"""The residue field GF(p**gamma).

Elements are plain ints in ``range(q)``.  The int ``sum(c_k * p**k)`` encodes
the residue ``c_0 + c_1 y + ... + c_{gamma-1} y**(gamma-1)`` modulo the field
modulus, so the natural order of codes is the lexicographic order of
coordinate tuples read from the high coordinate down.  Code 0 is the zero and
code 1 the unit, which makes ``range(q)`` the default enumeration
``a_0 = 0, a_1 = 1, a_2, ...`` of the field.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

__all__ = ["GF", "default_modulus", "is_irreducible_mod_p", "is_prime"]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _rem_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for k in range(len(r) - 1, db - 1, -1):
        coef = r[k] * inv % p
        if coef:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - coef * b[j]) % p
    return _trim(r[:db])


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(modulus) - 1
    if deg < 1 or modulus[-1] % p != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _rem_mod_p(modulus, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, gamma: int) -> tuple[int, ...]:
    """First monic irreducible of degree gamma, coefficient tuples ordered low to high."""
    for low in product(range(p), repeat=gamma):
        cand = tuple(low) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable for prime p


class GF:
    """GF(p**gamma) with int-coded elements and precomputed operation tables."""

    __slots__ = (
        "p", "gamma", "q", "modulus", "add_tab", "sub_tab", "mul_tab",
        "neg_tab", "inv_tab", "_coords", "__weakref__",
    )

    def __init__(self, p: int, gamma: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if gamma < 1:
            raise ValueError("gamma must be a positive integer")
        q = p**gamma
        if q > 256:
            raise ValueError(f"q={q} too large; residue fields are limited to q <= 256")
        if modulus is None:
            modulus = default_modulus(p, gamma)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != gamma + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree gamma")
        if not is_irreducible_mod_p(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p, self.gamma, self.q, self.modulus = p, gamma, q, modulus

        coords = [tuple((a // p**k) % p for k in range(gamma)) for a in range(q)]
        self._coords = coords
        enc = self._encode
        add = bytearray(q * q)
        sub = bytearray(q * q)
        mul = bytearray(q * q)
        for a in range(q):
            ca = coords[a]
            for b in range(q):
                cb = coords[b]
                add[a * q + b] = enc([(u + v) % p for u, v in zip(ca, cb)])
                sub[a * q + b] = enc([(u - v) % p for u, v in zip(ca, cb)])
                mul[a * q + b] = enc(self._mul_coords(ca, cb))
        self.add_tab, self.sub_tab, self.mul_tab = bytes(add), bytes(sub), bytes(mul)
        self.neg_tab = bytes(sub[0 * q + a] for a in range(q))
        inv = bytearray(q)
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self.inv_tab = bytes(inv)

    def _encode(self, coords: Sequence[int]) -> int:
        code = 0
        for c in reversed(coords):
            code = code * self.p + c
        return code

    def _mul_coords(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p, g, m = self.p, self.gamma, self.modulus
        prod_ = [0] * (2 * g - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    prod_[i + j] += u * v
        for k in range(2 * g - 2, g - 1, -1):
            c = prod_[k] % p
            if c:
                for j in range(g):
                    prod_[k - g + j] -= c * m[j]
            prod_[k] = 0
        return [c % p for c in prod_[:g]]

    # -- element arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_tab[a * self.q + b]

    def sub(self, a: int, b: int) -> int:
        return self.sub_tab[a * self.q + b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_tab[a * self.q + b]

    def neg(self, a: int) -> int:
        return self.neg_tab[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return self.inv_tab[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def coords(self, a: int) -> tuple[int, ...]:
        return self._coords[a]

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.gamma or any(not 0 <= c < self.p for c in coords):
            raise ValueError(f"expected {self.gamma} residues mod {self.p}, got {list(coords)}")
        return self._encode(coords)

    def elements(self) -> list[int]:
        """All q elements: zero, one, then the rest in coordinate order."""
        return list(range(self.q))

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GF)
            and (self.p, self.gamma, self.modulus) == (other.p, other.gamma, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.gamma, self.modulus))

    def __repr__(self) -> str:
        if self.gamma == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.gamma}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (GF, (self.p, self.gamma, self.modulus))
