"""Pure-Python polynomial kernels over GF(q).

Same contract as the compiled ``_ckernels`` module.  Polynomials are lists of
element codes, low degree first, with no trailing zeros.  All functions are
pure; inputs are never mutated.
"""

from __future__ import annotations

__all__ = ["poly_mul", "poly_divmod", "poly_gcd", "poly_scale"]


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: list[int], b: list[int], F) -> list[int]:
    if not a or not b:
        return []
    q = F.q
    if F.gamma == 1:
        p = q
        res = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b, i):
                    res[j] += ai * bj
        return _trim([c % p for c in res])
    addt, mult = F.add_tab, F.mul_tab
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            row = ai * q
            for j, bj in enumerate(b, i):
                if bj:
                    res[j] = addt[res[j] * q + mult[row + bj]]
    return _trim(res)


def poly_scale(a: list[int], c: int, F) -> list[int]:
    if c == 0:
        return []
    mult, q = F.mul_tab, F.q
    return [mult[c * q + x] for x in a]


def poly_divmod(a: list[int], b: list[int], F) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], list(a)
    q = F.q
    r = list(a)
    quo = [0] * (len(a) - db)
    inv = F.inv_tab[b[-1]]
    if F.gamma == 1:
        p = q
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k] * inv % p
            if c:
                quo[k - db] = c
                off = k - db
                for j in range(db):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return quo, _trim(r[:db])
    subt, mult = F.sub_tab, F.mul_tab
    for k in range(len(a) - 1, db - 1, -1):
        c = mult[r[k] * q + inv]
        if c:
            quo[k - db] = c
            off = k - db
            row = c * q
            for j in range(db):
                if b[j]:
                    r[off + j] = subt[r[off + j] * q + mult[row + b[j]]]
    return quo, _trim(r[:db])


def poly_gcd(a: list[int], b: list[int], F) -> list[int]:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b, F)[1]
    if not a:
        return []
    return poly_scale(a, F.inv_tab[a[-1]], F)
