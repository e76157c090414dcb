"""The space X of F_q-linear functions, its two coordinate systems and the ladder operators.

A function is either a ``LinearPoly`` (monomials t^(q^j)) or a
``CarlitzCoeffs`` sequence (c_0, ..., c_{M-1}) meaning sum c_i f_i.  The
operators below act on Carlitz coefficients by closed coefficient rules; the
``*_pointwise`` twins apply the defining formulas to values, and the suites
compare the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Sequence

import numpy as np

from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF
from carlitzosc.algebra.laurent import Laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.carlitz import CarlitzCache, e_poly, f_poly, f_value
from carlitzosc.errors import DomainError
from carlitzosc.linear import LinearPoly, is_zero_scalar

__all__ = [
    "CarlitzCoeffs", "DeltaResult", "as_scalar", "scalars_agree", "eval_fn", "to_carlitz",
    "from_carlitz", "delta", "delta_pointwise", "delta_coeffs", "delta_coeffs_expanded",
    "delta_i", "a_plus", "a_plus_pointwise", "a_minus", "number_op", "commutator_defect",
    "commutator_k_only", "coherent_state", "coherent_closed_form", "coherent_precondition",
    "norm", "sampled_norm",
]

Scalar = RatFunc | Laurent


def as_scalar(F: GF, s) -> Scalar:
    """Promote ints and polynomials to RatFunc; RatFunc and Laurent pass through."""
    if isinstance(s, (RatFunc, Laurent)):
        return s
    if isinstance(s, Poly):
        return RatFunc.from_poly(s)
    if isinstance(s, int):
        return RatFunc.const(F, F.from_int(s))
    raise TypeError(f"not a scalar: {type(s).__name__}")


def scalars_agree(a, b) -> bool:
    """Equality, read at the common precision when a truncated series is involved."""
    if isinstance(a, Laurent):
        return a.agree(b)[0]
    if isinstance(b, Laurent):
        return b.agree(a)[0]
    return a == b


def _valuation(s) -> Fraction | None:
    v = s.valuation()
    return None if v is None else Fraction(v)


@dataclass(frozen=True)
class CarlitzCoeffs:
    """phi = sum_{i < M} c_i f_i.

    ``truncated`` marks the first M coefficients of an infinite expansion:
    operators then only report outputs that the known coefficients determine.
    """

    field: GF
    coeffs: tuple
    truncated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_scalar(self.field, c) for c in self.coeffs))

    @classmethod
    def unit(cls, F: GF, i: int) -> "CarlitzCoeffs":
        """The basis vector f_i."""
        return cls(F, [RatFunc.zero(F)] * i + [RatFunc.one(F)])

    @property
    def M(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        if self.truncated and i >= 0:
            raise IndexError(f"coefficient {i} is beyond the truncation order {self.M}")
        return RatFunc.zero(self.field)

    def map(self, fn: Callable) -> "CarlitzCoeffs":
        return CarlitzCoeffs(self.field, [fn(c) for c in self.coeffs], self.truncated)

    def scale(self, s) -> "CarlitzCoeffs":
        return self.map(lambda c: s * c)

    def __add__(self, other: "CarlitzCoeffs") -> "CarlitzCoeffs":
        n = max(self.M, other.M)
        tr = self.truncated or other.truncated
        if tr:
            n = min(self.M if self.truncated else n, other.M if other.truncated else n)
        return CarlitzCoeffs(self.field, [self[i] + other[i] for i in range(n)], tr)

    def __neg__(self) -> "CarlitzCoeffs":
        return self.map(lambda c: -c)

    def __sub__(self, other: "CarlitzCoeffs") -> "CarlitzCoeffs":
        return self + (-other)

    def agree(self, other: "CarlitzCoeffs") -> bool:
        """Coefficientwise equality on the common valid prefix (all of it if both exact)."""
        n = max(self.M, other.M)
        if self.truncated or other.truncated:
            n = min(self.M if self.truncated else n, other.M if other.truncated else n)
        return all(scalars_agree(self[i], other[i]) for i in range(n))

    def first_mismatch(self, other: "CarlitzCoeffs") -> int | None:
        n = max(self.M, other.M)
        if self.truncated or other.truncated:
            n = min(self.M if self.truncated else n, other.M if other.truncated else n)
        for i in range(n):
            if not scalars_agree(self[i], other[i]):
                return i
        return None

    def __str__(self) -> str:
        from carlitzosc.serialize import format_scalar

        body = ", ".join(format_scalar(c) for c in self.coeffs)
        return f"[{body}{', ...' if self.truncated else ''}]"


# -- evaluation and change of basis ---------------------------------------------------


def _check_integral(t) -> None:
    if isinstance(t, Poly):
        return
    v = t.valuation()
    if v is not None and v < 0:
        raise DomainError(f"t = {t} has |t| > 1; functions in X are defined on |t| <= 1")


def eval_fn(cache: CarlitzCache, phi, t):
    """phi(t) for phi a LinearPoly or CarlitzCoeffs and |t| <= 1.

    Polynomial t gives exact values; f_i(t) then lies in F_q[x].
    """
    _check_integral(t)
    if isinstance(t, Laurent) and t.exact and t.denom == 1:
        t = Poly(t.field, [0] * t.val + list(t.coeffs))
    if isinstance(phi, LinearPoly):
        return phi(t)
    if isinstance(t, Poly):
        acc = RatFunc.zero(phi.field)
        for i, c in enumerate(phi.coeffs):
            if not is_zero_scalar(c):
                acc = c * f_value(cache, i, t) + acc
        return acc
    acc = None
    for i, c in enumerate(phi.coeffs):
        if is_zero_scalar(c):
            continue
        fi = e_poly(cache, i)(t) / cache.D[i]
        term = c * fi
        acc = term if acc is None else acc + term
    return acc if acc is not None else t * 0


def from_carlitz(cache: CarlitzCache, c: CarlitzCoeffs) -> LinearPoly:
    F = cache.field
    acc = LinearPoly(F, [])
    for i, ci in enumerate(c.coeffs):
        if not is_zero_scalar(ci):
            acc = acc + f_poly(cache, i).scale(ci)
    return acc


def to_carlitz(cache: CarlitzCache, phi: LinearPoly) -> CarlitzCoeffs:
    """Triangular solve: f_i has top monomial t^(q^i) with coefficient 1/D_i."""
    F = cache.field
    n = phi.degree_index() + 1
    cache.check_depth(n - 1 if n else 0)
    rest = phi
    out = [RatFunc.zero(F)] * n
    for i in range(n - 1, -1, -1):
        u = rest[i]
        if is_zero_scalar(u):
            continue
        ci = u * cache.D[i]
        out[i] = ci
        rest = rest - f_poly(cache, i).scale(ci)
    return CarlitzCoeffs(F, out)


# -- the difference operators -----------------------------------------------------------


def delta(cache: CarlitzCache, phi: LinearPoly) -> LinearPoly:
    """Delta on monomials: u_j t^(q^j) -> [j] u_j t^(q^j), with [0] = 0."""
    F = cache.field
    out = []
    for j, u in enumerate(phi.coeffs):
        out.append(RatFunc.zero(F) if j == 0 else u * _bracket(cache, j))
    return LinearPoly(F, out)


def _bracket(cache: CarlitzCache, j: int) -> Poly:
    if j <= cache.imax:
        return cache.brackets[j]
    return Poly.monomial(cache.field, cache.q**j) - Poly.x(cache.field)


def delta_pointwise(phi: LinearPoly, t):
    """(Delta phi)(t) = phi(x t) - x phi(t), straight from the definition."""
    x = Poly.x(phi.field)
    return phi(t * x) - phi(t) * x


def delta_i(cache: CarlitzCache, phi: LinearPoly, i: int, method: str = "recursive") -> LinearPoly:
    """Delta^(i); ``recursive`` applies Delta^(k)phi(t) = Delta^(k-1)phi(xt) - x^(q^(k-1)) Delta^(k-1)phi(t),
    ``closed`` multiplies u_j by prod_{k<i} (x^(q^j) - x^(q^k))."""
    if i < 0:
        raise ValueError("Delta^(i) needs i >= 0")
    F, q = cache.field, cache.q
    if method == "closed":
        out = []
        for j, u in enumerate(phi.coeffs):
            fac = Poly.one(F)
            for k in range(i):
                fac = fac * (Poly.monomial(F, q**j) - Poly.monomial(F, q**k))
            out.append(u * fac)
        return LinearPoly(F, out)
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    cur = phi
    for k in range(1, i + 1):
        xq = Poly.monomial(F, q ** (k - 1))
        # phi(xt) scales the t^(q^j) coefficient by x^(q^j)
        cur = LinearPoly(F, [u * Poly.monomial(F, q**j) - u * xq for j, u in enumerate(cur.coeffs)])
    return cur


@dataclass(frozen=True)
class DeltaResult:
    """Delta phi = (inner)^q, inner given by Carlitz coefficients."""

    inner: CarlitzCoeffs
    qth_power: bool = True


def delta_coeffs(c: CarlitzCoeffs, cap: int | None = None) -> DeltaResult:
    """Delta(sum c_i f_i) = (sum_{i>=1} c_i^(1/q) f_{i-1})^q."""
    return DeltaResult(a_minus(c, cap))


def delta_coeffs_expanded(cache: CarlitzCache, c: CarlitzCoeffs) -> CarlitzCoeffs:
    """Delta on coefficients without roots: d_k = [k] c_k + c_{k+1}.

    Uses f_{i-1}^q = [i] f_i + f_{i-1}.
    """
    F = c.field
    n = c.M - 1 if c.truncated else c.M
    out = []
    for k in range(max(n, 0)):
        term = c[k + 1] if k + 1 < c.M else RatFunc.zero(F)
        out.append(term if k == 0 else c[k] * _bracket(cache, k) + term)
    return CarlitzCoeffs(F, out, c.truncated)


# -- ladder operators ------------------------------------------------------------------


def a_plus(cache: CarlitzCache, c: CarlitzCoeffs) -> CarlitzCoeffs:
    """a+ = R_q - I on coefficients: d_i = c_{i-1}^q [i] + c_i^q - c_i."""
    F = c.field
    n = c.M if c.truncated else c.M + 1
    out = []
    for i in range(n):
        ci = c[i] if i < c.M else RatFunc.zero(F)
        d = ci.frob() - ci
        if i >= 1:
            d = c[i - 1].frob() * _bracket(cache, i) + d
        out.append(d)
    return CarlitzCoeffs(F, out, c.truncated)


def a_plus_pointwise(cache: CarlitzCache, c: CarlitzCoeffs, t):
    """(a+ phi)(t) = phi(t)^q - phi(t)."""
    v = eval_fn(cache, c, t)
    return v.frob() - v


def a_minus(c: CarlitzCoeffs, cap: int | None = None) -> CarlitzCoeffs:
    """a- on coefficients: d_i = c_{i+1}^(1/q).  ``cap`` bounds the ramification denominator."""
    if cap is None:
        cap = c.field.q**2
    return CarlitzCoeffs(c.field, [ci.qth_root(cap) for ci in c.coeffs[1:]], c.truncated)


def number_op(cache: CarlitzCache, c: CarlitzCoeffs, cap: int | None = None) -> CarlitzCoeffs:
    return a_plus(cache, a_minus(c, cap))


def commutator_defect(
    cache: CarlitzCache, c: CarlitzCoeffs, cap: int | None = None
) -> tuple[CarlitzCoeffs, CarlitzCoeffs]:
    """(lhs, rhs) = ((a-a+ - a+a-) c, [1]^(1/q) c)."""
    F = c.field
    if cap is None:
        cap = F.q**2
    lhs = a_minus(a_plus(cache, c), cap) - a_plus(cache, a_minus(c, cap))
    root = RatFunc.from_poly(cache.brackets[1] if cache.imax >= 1 else _bracket(cache, 1)).qth_root(cap)
    return lhs, c.scale(root)


def commutator_k_only(cache: CarlitzCache, c: CarlitzCoeffs) -> tuple[list, list]:
    """Both sides of ((a-a+ - a+a-) phi)^q = [1] phi^q coefficientwise, with no roots taken.

    (a-a+ c)_i^q = (a+ c)_{i+1} and (a+a- c)_i^q = [i]^q c_i^q + c_{i+1}^q - c_{i+1}.
    """
    F = c.field
    ap = a_plus(cache, c)
    n = c.M - 1 if c.truncated else c.M
    lhs, rhs = [], []
    one = _bracket(cache, 1)
    for i in range(n):
        nxt = c[i + 1] if i + 1 < c.M else RatFunc.zero(F)
        ci_q = c[i].frob()
        second = nxt.frob() - nxt
        if i >= 1:
            second = ci_q * _bracket(cache, i).frob() + second
        lhs.append(ap[i + 1] - second)
        rhs.append(ci_q * one)
    return lhs, rhs


# -- coherent states -----------------------------------------------------------------


def coherent_precondition(q: int, lam, c0) -> bool:
    """|lam|^(q/(q-1)) |c0| < 1, as exponent arithmetic: val(lam) q/(q-1) + val(c0) > 0."""
    vl, vc = _valuation(lam), _valuation(c0)
    if vl is None:
        raise DomainError("coherent states need lambda != 0")
    if vc is None:
        return True
    return vl * Fraction(q, q - 1) + vc > 0


def coherent_state(F: GF, lam, c0, M: int) -> CarlitzCoeffs:
    """c_0 = c0, c_{n+1} = (lam c_n)^q for n < M - 1: the solution of c_{n+1}^(1/q) = lam c_n."""
    lam, c0 = as_scalar(F, lam), as_scalar(F, c0)
    if not coherent_precondition(F.q, lam, c0):
        raise DomainError(
            "coherent state diverges: need |lambda|^(q/(q-1)) * |c0| < 1"
        )
    out = [c0]
    for _ in range(M - 1):
        out.append((lam * out[-1]).frob())
    return CarlitzCoeffs(F, out, truncated=True)


def coherent_closed_form(F: GF, nu, c0, M: int) -> CarlitzCoeffs:
    """For lam = nu^(q-1): c_n = mu^(-1) (c0 mu)^(q^n), mu = nu^q."""
    nu, c0 = as_scalar(F, nu), as_scalar(F, c0)
    mu = nu.frob()
    base = c0 * mu
    inv = 1 / mu
    out = []
    for _ in range(M):
        out.append(inv * base)
        base = base.frob()
    return CarlitzCoeffs(F, out, truncated=True)


# -- norms ------------------------------------------------------------------------------


def norm(c: CarlitzCoeffs) -> AbsValue:
    """max_i |c_i|."""
    best = AbsValue.ZERO
    for ci in c.coeffs:
        a = AbsValue.of_valuation(ci.valuation())
        if a > best:
            best = a
    return best


def _values_at_monomials(cache: CarlitzCache, c: CarlitzCoeffs, bound: int) -> list[RatFunc]:
    F = cache.field
    for ci in c.coeffs:
        if not isinstance(ci, RatFunc):
            raise TypeError("sampled_norm needs exact coefficients")
    return [as_scalar(F, eval_fn(cache, c, Poly.monomial(F, k))) for k in range(bound)]


def _all_polys(F: GF, bound: int):
    for digits in iproduct(range(F.q), repeat=bound):
        yield Poly(F, digits[::-1])


def sampled_norm(cache: CarlitzCache, c: CarlitzCoeffs, bound: int, method: str = "linear") -> AbsValue:
    """max |phi(t)| over every t in F_q[x] with deg t < bound.

    ``linear``: phi(sum a_k x^k) = sum a_k phi(x^k); all q^bound combinations of
    the bound values phi(x^k) are formed at once in numpy and the x-order of
    each is read off.  ``direct``: evaluate phi at each t separately.
    ``basis``: max_k |phi(x^k)| (ultrametric shortcut; a cross-check only).
    """
    F = cache.field
    if method == "direct":
        best = AbsValue.ZERO
        for t in _all_polys(F, bound):
            a = AbsValue.of_valuation(as_scalar(F, eval_fn(cache, c, t)).valuation())
            best = max(best, a)
        return best
    vals = _values_at_monomials(cache, c, bound)
    if method == "basis":
        return max((AbsValue.of_valuation(v.valuation()) for v in vals), default=AbsValue.ZERO)
    if method != "linear":
        raise ValueError(f"unknown method {method!r}")
    for v in vals:
        if v.ram != 1:
            raise TypeError("sampled_norm needs unramified coefficients")
    # common denominator: val(sum a_k v_k) = val(sum a_k N_k) - val(den)
    den = Poly.one(F)
    for v in vals:
        den = den * v.den.exact_div(den.gcd(v.den))
    nums = [v.num * den.exact_div(v.den) for v in vals]
    width = max((len(n.coeffs) for n in nums), default=0)
    if width == 0:
        return AbsValue.ZERO
    q = F.q
    add = np.frombuffer(F.add_tab, dtype=np.uint8).reshape(q, q)
    mul = np.frombuffer(F.mul_tab, dtype=np.uint8).reshape(q, q)
    combos = np.zeros((1, width), dtype=np.uint8)
    for n in nums:
        row = np.zeros(width, dtype=np.uint8)
        row[: len(n.coeffs)] = n.coeffs
        scaled = mul[:, row]  # (q, width): a * N_k for every a in F_q
        combos = add[combos[None, :, :], scaled[:, None, :]].reshape(-1, width)
    nz = combos != 0
    has = nz.any(axis=1)
    if not has.any():
        return AbsValue.ZERO
    lowest = int(np.argmax(nz[has], axis=1).min())
    return AbsValue(Fraction(lowest - den.valuation()))
