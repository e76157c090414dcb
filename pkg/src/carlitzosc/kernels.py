"""Backend selection for the polynomial hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` twin.  Setting ``CARLITZOSC_PURE=1`` forces the
fallback.  Operands past a size threshold go through Kronecker substitution
(`_kron`) regardless of backend, and long divisions through Newton
inversion built on that product.
"""

from __future__ import annotations

import os

import numpy as np

from carlitzosc import _pykernels
from carlitzosc._kron import mul_codes

if os.environ.get("CARLITZOSC_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from carlitzosc import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
        BACKEND = "python"

# schoolbook below these operand sizes (min length / quotient length)
KRON_MUL_MIN = 400 if BACKEND == "cython" else 48
NEWTON_DIV_MIN = 600 if BACKEND == "cython" else 64

__all__ = ["BACKEND", "mul", "divmod_", "gcd", "scale", "inverse_series", "use_backend"]


def use_backend(name: str) -> None:
    """Switch backend at runtime ("cython" or "python"); for tests and benchmarks."""
    global _impl, BACKEND, KRON_MUL_MIN, NEWTON_DIV_MIN
    if name == "cython":
        from carlitzosc import _ckernels

        _impl, KRON_MUL_MIN, NEWTON_DIV_MIN = _ckernels, 400, 600
    elif name == "python":
        _impl, KRON_MUL_MIN, NEWTON_DIV_MIN = _pykernels, 48, 64
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def mul(a: list[int], b: list[int], F) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRON_MUL_MIN:
        return _impl.poly_mul(a, b, F)
    out = mul_codes(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64), F)
    return _trim(out.tolist())


def scale(a: list[int], c: int, F) -> list[int]:
    return _impl.poly_scale(a, c, F)


def _sub(a: list[int], b: list[int], F) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    if F.gamma == 1:
        p = F.p
        return _trim([(x - y) % p for x, y in zip(a, b)])
    subt, q = F.sub_tab, F.q
    return _trim([subt[x * q + y] for x, y in zip(a, b)])


def inverse_series(b: list[int], n: int, F) -> list[int]:
    """First n coefficients of 1/b as a power series (b[0] != 0)."""
    inv0 = F.inv_tab[b[0]]
    g = [inv0]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # g <- g (2 - b g) mod x^k
        bg = mul(b[:k], g, F)[:k]
        two_minus = _sub([F.from_int(2)], bg, F)
        g = _trim(mul(g, two_minus, F)[:k])
    return g[:n]


def divmod_(a: list[int], b: list[int], F) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    la, lb = len(a), len(b)
    if la < lb:
        return [], list(a)
    nq = la - lb + 1
    if min(nq, lb) < NEWTON_DIV_MIN:
        return _impl.poly_divmod(a, b, F)
    # reversed polynomials: rev(quo) = rev(a) / rev(b) mod x^nq
    ra = a[::-1][:nq]
    rb = b[::-1]
    inv = inverse_series(rb[:nq], nq, F)
    rq = mul(ra, inv, F)[:nq]
    rq = rq + [0] * (nq - len(rq))
    quo = _trim(rq[::-1])
    rem = _sub(a, mul(quo, b, F), F)
    if len(rem) >= lb:
        raise ArithmeticError("Newton division produced an oversized remainder")
    return quo, rem


def gcd(a: list[int], b: list[int], F) -> list[int]:
    return _impl.poly_gcd(a, b, F)
