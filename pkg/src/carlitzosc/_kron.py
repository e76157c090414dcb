"""Kronecker-substitution multiplication through GMP.

Dense coefficient grids over F_p are packed into one big integer with
fixed-width slots, multiplied by GMP, and unpacked with numpy.  Extension
fields GF(p**gamma) ride along as one extra axis of length gamma (the
coordinates of each code), reduced modulo the field modulus afterwards.
"""

from __future__ import annotations

import math

import gmpy2
import numpy as np

__all__ = ["kron_mul", "codes_to_coords", "coords_to_codes", "mul_codes"]

_HEADER = b"\x01\x01"


def _pack(grid: np.ndarray, out_shape: tuple[int, ...], width: int) -> gmpy2.mpz:
    # the leading axis needs no padding: it only contributes high-order slots
    buf = np.zeros(grid.shape[:1] + out_shape[1:], dtype="<u8")
    buf[tuple(slice(0, s) for s in grid.shape)] = grid
    raw = buf.reshape(-1, 1).view(np.uint8)[:, :width]
    # high zero bytes are harmless to from_binary
    return gmpy2.from_binary(_HEADER + raw.tobytes())


def kron_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two dense multivariate polynomials over F_p.

    ``a`` and ``b`` are integer arrays of equal rank holding residues in
    [0, p); axis k indexes the exponent of the k-th variable.  The result has
    shape ``a.shape + b.shape - 1`` and residues in [0, p).
    """
    out_shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    # each output slot receives at most one product per nonzero entry of either factor
    terms = min(int(np.count_nonzero(a)), int(np.count_nonzero(b)))
    bound = (p - 1) ** 2 * terms
    width = max(1, (bound.bit_length() + 7) // 8)
    if width > 8:
        raise OverflowError("coefficient grid too large for 64-bit slots")
    n = math.prod(out_shape)
    prod_ = _pack(a, out_shape, width) * _pack(b, out_shape, width)
    nbytes = n * width
    raw = gmpy2.to_binary(prod_)[2:] if prod_ else b""
    if len(raw) < nbytes:
        raw = raw + bytes(nbytes - len(raw))
    slots = np.zeros((n, 8), dtype=np.uint8)
    slots[:, :width] = np.frombuffer(raw, dtype=np.uint8, count=nbytes).reshape(n, width)
    out = slots.view("<u8").reshape(out_shape)
    return (out % p).astype(np.int64)


def codes_to_coords(codes: np.ndarray, F) -> np.ndarray:
    """Append a trailing axis with the gamma coordinates of each code."""
    table = np.array([F.coords(c) for c in range(F.q)], dtype=np.int64)
    return table[codes]


def coords_to_codes(coords: np.ndarray, F) -> np.ndarray:
    """Reduce a trailing axis of length <= 2*gamma - 1 modulo the field modulus, then encode."""
    p, g, mod = F.p, F.gamma, F.modulus
    c = coords.copy()
    for k in range(c.shape[-1] - 1, g - 1, -1):
        lead = c[..., k] % p
        for j in range(g):
            c[..., k - g + j] -= lead * mod[j]
    c = c[..., :g] % p
    weights = p ** np.arange(g, dtype=np.int64)
    return (c * weights).sum(axis=-1)


def mul_codes(a: np.ndarray, b: np.ndarray, F) -> np.ndarray:
    """Product of dense polynomial grids whose entries are GF(q) codes."""
    if F.gamma == 1:
        return kron_mul(a, b, F.p)
    prod_ = kron_mul(codes_to_coords(a, F), codes_to_coords(b, F), F.p)
    return coords_to_codes(prod_, F)
