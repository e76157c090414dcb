"""Carlitz brackets, factorials, binomials and the polynomial bases e_i, f_i, h_j, Q_j.

Everything here is exact: coefficients live in F_q[x] or F_q(x).  The
``CarlitzCache`` holds [i], D_i and L_i up to a depth ``imax``; the basis
polynomials are derived from it on demand and memoised on the cache.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from typing import Sequence


from carlitzosc.algebra.field import GF
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.errors import BudgetExceeded, ConsistencyError
from carlitzosc.linear import LinearPoly, is_zero_scalar

__all__ = [
    "CarlitzCache", "DigitExpansion", "TPoly", "bracket", "factorials", "closed_D", "closed_L",
    "carlitz_binom", "e_poly", "e_product_oracle", "e_product_expansion", "e_product_terms", "f_poly", "f_value",
    "h_poly", "m_seq", "Q_poly", "expand_h_in_Q", "l_and_kappa", "kappa_by_product",
    "default_enumeration", "alternative_enumeration", "DEFAULT_ORACLE_BUDGET",
]

DEFAULT_ORACLE_BUDGET = 4096


# -- brackets and factorials ------------------------------------------------------


def bracket(F: GF, i: int) -> Poly:
    """[i] = x^(q^i) - x."""
    if i < 1:
        raise ValueError("[i] is defined for i >= 1")
    return Poly.monomial(F, F.q**i) - Poly.x(F)


@dataclass(frozen=True, eq=False)
class CarlitzCache:
    field: GF
    imax: int
    brackets: tuple  # brackets[0] is [0] := 0, used by the difference operator
    D: tuple
    L: tuple
    _memo: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.field.q

    def check_depth(self, i: int) -> None:
        if not 0 <= i <= self.imax:
            raise ValueError(f"index {i} outside the cached depth 0..{self.imax}")


def factorials(F: GF, imax: int) -> CarlitzCache:
    """Brackets and Carlitz factorials by the recurrences D_i = [i] D_{i-1}^q, L_i = [i] L_{i-1}."""
    if imax < 0:
        raise ValueError("imax must be >= 0")
    br = [Poly.zero(F)] + [bracket(F, i) for i in range(1, imax + 1)]
    D = [Poly.one(F)]
    L = [Poly.one(F)]
    for i in range(1, imax + 1):
        D.append(br[i] * D[i - 1].frob())
        L.append(br[i] * L[i - 1])
    return CarlitzCache(F, imax, tuple(br), tuple(D), tuple(L))


def closed_D(F: GF, i: int) -> Poly:
    """D_i = [i] [i-1]^q ... [1]^(q^(i-1)) as a direct product."""
    acc = Poly.one(F)
    for k in range(i):
        acc = acc * bracket(F, i - k).frob(k)
    return acc


def closed_L(F: GF, i: int) -> Poly:
    acc = Poly.one(F)
    for k in range(1, i + 1):
        acc = acc * bracket(F, k)
    return acc


def carlitz_binom(cache: CarlitzCache, i: int, j: int) -> Poly:
    """D_i / (D_j L_{i-j}^(q^j)), checked to be an exact polynomial quotient."""
    if not 0 <= j <= i:
        raise ValueError(f"binomial needs 0 <= j <= i, got i={i}, j={j}")
    cache.check_depth(i)
    key = ("binom", i, j)
    if key not in cache._memo:
        den = cache.D[j] * cache.L[i - j].frob(j)
        quo, rem = divmod(cache.D[i], den)
        if rem:
            raise ConsistencyError(f"Carlitz binomial [{i} over {j}] is not a polynomial")
        cache._memo[key] = quo
    return cache._memo[key]


# -- e_i and f_i ------------------------------------------------------------------


def e_poly(cache: CarlitzCache, i: int) -> LinearPoly:
    """e_i(t) = sum_j (-1)^(i-j) [i over j] t^(q^j)."""
    key = ("e", i)
    if key not in cache._memo:
        coeffs = []
        for j in range(i + 1):
            b = carlitz_binom(cache, i, j)
            coeffs.append(-b if (i - j) % 2 else b)
        cache._memo[key] = LinearPoly(cache.field, coeffs)
    return cache._memo[key]


def f_poly(cache: CarlitzCache, i: int) -> LinearPoly:
    """f_i = e_i / D_i with reduced rational coefficients."""
    key = ("f", i)
    if key not in cache._memo:
        Di = cache.D[i]
        cache._memo[key] = e_poly(cache, i).map_coeffs(lambda u: RatFunc(u, Di))
    return cache._memo[key]


def f_value(cache: CarlitzCache, i: int, t: Poly) -> Poly:
    """f_i(t) for t in F_q[x]; f_i maps F_q[x] into F_q[x], so the division is exact."""
    key = ("fval", i, t)
    if key not in cache._memo:
        cache._memo[key] = e_poly(cache, i)(t).exact_div(cache.D[i])
    return cache._memo[key]


def _all_polys_below(F: GF, deg: int) -> list[Poly]:
    """The q^deg polynomials of degree < deg, index n carrying the digits of n."""
    out = []
    for digits in iproduct(range(F.q), repeat=deg):
        out.append(Poly(F, digits[::-1]))
    # iproduct varies the last slot fastest; reversing puts the fastest digit at x^0
    return out


def _sparse_mul(a: dict[int, Poly], b: dict[int, Poly]) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for i, u in a.items():
        for j, v in b.items():
            w = u * v
            out[i + j] = out[i + j] + w if i + j in out else w
    return {k: v for k, v in out.items() if v}


def e_product_terms(F: GF, i: int, budget: int = DEFAULT_ORACLE_BUDGET) -> dict[int, Poly]:
    """Nonzero t-coefficients {k: coefficient of t^k} of prod_{deg m < i} (t - m).

    Every linear factor is multiplied in.  Runs of q consecutive factors
    (which differ in a single digit) are combined first, then runs of those,
    and so on; products are sparse in t, so only nonzero rows are multiplied.
    Nothing about the shape of the result is assumed.
    """
    n = F.q**i
    if n > budget:
        raise BudgetExceeded(f"product oracle for e_{i} needs {n} factors > budget {budget}")
    one = Poly.one(F)
    terms = [{0: -m, 1: one} if m else {1: one} for m in _all_polys_below(F, i)]
    q = F.q
    while len(terms) > 1:
        nxt = []
        for k in range(0, len(terms), q):
            acc = terms[k]
            for other in terms[k + 1 : k + q]:
                acc = _sparse_mul(acc, other)
            nxt.append(acc)
        terms = nxt
    return terms[0]


def e_product_expansion(F: GF, i: int, budget: int = DEFAULT_ORACLE_BUDGET) -> list[Poly]:
    """All t-coefficients of the defining product, dense, as polynomials in x."""
    terms = e_product_terms(F, i, budget)
    top = max(terms)
    return [terms.get(k, Poly.zero(F)) for k in range(top + 1)]


def e_product_oracle(F: GF, i: int, budget: int = DEFAULT_ORACLE_BUDGET) -> LinearPoly:
    """e_i from its defining product; fails if a non-q-power monomial survives."""
    terms = e_product_terms(F, i, budget)
    powers = [F.q**j for j in range(i + 1)]
    stray = sorted(set(terms) - set(powers))
    if stray:
        raise ConsistencyError(f"product for e_{i} has a t^{stray[0]} term; not F_q-linear")
    return LinearPoly(F, [terms.get(k, Poly.zero(F)) for k in powers])


# -- general polynomials in t --------------------------------------------------------


class TPoly:
    """Dense polynomial in t with scalar coefficients (Poly or RatFunc)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and is_zero_scalar(c[-1]):
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def from_linear(cls, phi: LinearPoly) -> "TPoly":
        F = phi.field
        q = F.q
        if phi.is_zero():
            return cls(F, [])
        dense = [Poly.zero(F)] * (q ** phi.degree_index() + 1)
        for j, u in enumerate(phi.coeffs):
            dense[q**j] = u
        return cls(F, dense)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self):
        return self.coeffs[-1]

    def __mul__(self, other: "TPoly") -> "TPoly":
        if not self.coeffs or not other.coeffs:
            return TPoly(self.field, [])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if is_zero_scalar(a):
                continue
            for j, b in enumerate(other.coeffs):
                if is_zero_scalar(b):
                    continue
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = Poly.zero(self.field)
        return TPoly(self.field, [zero if c is None else c for c in out])

    def __add__(self, other: "TPoly") -> "TPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return TPoly(self.field, [u + b[k] if k < len(b) else u for k, u in enumerate(a)])

    def __pow__(self, n: int) -> "TPoly":
        acc = TPoly(self.field, [Poly.one(self.field)])
        for _ in range(n):
            acc = acc * self
        return acc

    def scale(self, c) -> "TPoly":
        return TPoly(self.field, [c * u for u in self.coeffs])

    def __call__(self, t):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        return Poly.zero(self.field) if acc is None else acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __str__(self) -> str:
        from carlitzosc.serialize import format_scalar

        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if is_zero_scalar(c):
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            s = format_scalar(c)
            if not mono:
                terms.append(s if " " not in s else f"({s})")
            else:
                terms.append(mono if s == "1" else f"({s})*{mono}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


# -- digits, h_j, m_j, Q_j ------------------------------------------------------------


@dataclass(frozen=True)
class DigitExpansion:
    n: int
    digits: tuple[int, ...]  # alpha_0, ..., alpha_s, low first

    @classmethod
    def of(cls, n: int, q: int) -> "DigitExpansion":
        if n < 0:
            raise ValueError("digit expansion of a negative number")
        d, m = [], n
        while m:
            m, r = divmod(m, q)
            d.append(r)
        return cls(n, tuple(d))

    def value(self, q: int) -> int:
        return sum(a * q**k for k, a in enumerate(self.digits))


def h_poly(cache: CarlitzCache, j: int) -> tuple[TPoly, TPoly, Poly]:
    """(h_j, G_j, Gamma_j) with G_j = prod e_i^alpha_i and Gamma_j = prod D_i^alpha_i."""
    F = cache.field
    digits = DigitExpansion.of(j, F.q).digits
    if len(digits) > cache.imax + 1:
        raise ValueError(f"h_{j} needs e_i for i up to {len(digits) - 1} > imax {cache.imax}")
    G = TPoly(F, [Poly.one(F)])
    Gamma = Poly.one(F)
    for i, a in enumerate(digits):
        if a:
            G = G * TPoly.from_linear(e_poly(cache, i)) ** a
            Gamma = Gamma * cache.D[i] ** a
    inv = RatFunc(Poly.one(F), Gamma)
    return G.scale(inv), G, Gamma


def default_enumeration(F: GF) -> list[int]:
    return F.elements()


def alternative_enumeration(F: GF) -> list[int]:
    """a_0 = 0, a_1 = 1 kept, remaining elements reversed (differs from the default for q >= 4)."""
    rest = F.elements()[2:]
    return [0, 1] + rest[::-1]


def _check_enum(F: GF, enum: Sequence[int]) -> Sequence[int]:
    if sorted(enum) != F.elements() or enum[0] != 0 or enum[1] != 1:
        raise ValueError("enumeration must be a permutation of F_q with a_0 = 0, a_1 = 1")
    return enum


def m_seq(F: GF, j: int, enum: Sequence[int] | None = None) -> Poly:
    """m_j = a_{alpha_0} + a_{alpha_1} x + ... from the q-adic digits of j."""
    enum = default_enumeration(F) if enum is None else enum
    return Poly(F, [enum[a] for a in DigitExpansion.of(j, F.q).digits])


def _P(F: GF, j: int, enum) -> TPoly:
    P = TPoly(F, [Poly.one(F)])
    for k in range(j):
        P = P * TPoly(F, [-m_seq(F, k, enum), Poly.one(F)])
    return P


def Q_poly(F: GF, j: int, enum: Sequence[int] | None = None) -> TPoly:
    """Q_0 = 1, Q_j = P_j / P_j(m_j) with P_j = prod_{k<j} (t - m_k)."""
    enum = _check_enum(F, default_enumeration(F) if enum is None else enum)
    if j == 0:
        return TPoly(F, [RatFunc.one(F)])
    P = _P(F, j, enum)
    Pm = P(m_seq(F, j, enum))
    if Pm.is_zero():
        raise ConsistencyError(f"P_{j}(m_{j}) = 0: the m_k are not distinct")
    return P.scale(RatFunc(Poly.one(F), Pm))


def expand_h_in_Q(cache: CarlitzCache, n: int, enum: Sequence[int] | None = None) -> list[RatFunc]:
    """Coefficients c_{n0}, ..., c_{nn} of h_n = sum_i c_{ni} Q_i, by Newton interpolation at the m_k."""
    F = cache.field
    enum = _check_enum(F, default_enumeration(F) if enum is None else enum)
    ms = [m_seq(F, k, enum) for k in range(n + 1)]
    _, G, Gamma = h_poly(cache, n)
    # P_i(m_k) for i <= k, built as prefix products of (m_k - m_l)
    Pik = [[None] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        acc = Poly.one(F)
        for i in range(k + 1):
            Pik[i][k] = acc
            if i < k:
                acc = acc * (ms[k] - ms[i])
    c: list[RatFunc] = []
    for k in range(n + 1):
        val = RatFunc(G(ms[k]), Gamma)
        for i in range(k):
            if not c[i].is_zero():
                val = val - c[i] * RatFunc(Pik[i][k], Pik[i][i])
        c.append(val)  # Q_k(m_k) = 1
    return c


def l_and_kappa(F: GF, n: int, enum: Sequence[int] | None = None) -> tuple[int, int]:
    """(l_n from the digit formula, kappa_n = x-order of P_n(m_n) = prod_{k<n} (m_n - m_k))."""
    enum = _check_enum(F, default_enumeration(F) if enum is None else enum)
    q = F.q
    digits = DigitExpansion.of(n, q).digits
    l = sum(a * sum(q**r for r in range(k)) for k, a in enumerate(digits) if k >= 1)
    mn = m_seq(F, n, enum)
    kappa = 0
    for k in range(n):
        v = (mn - m_seq(F, k, enum)).valuation()
        if v is None:
            raise ConsistencyError(f"m_{n} = m_{k}: enumeration is not injective")
        kappa += v
    return l, kappa


def kappa_by_product(F: GF, n: int, enum: Sequence[int] | None = None) -> int:
    """x-order of the fully multiplied-out P_n(m_n) (slow route, small n)."""
    enum = _check_enum(F, default_enumeration(F) if enum is None else enum)
    mn = m_seq(F, n, enum)
    acc = Poly.one(F)
    for k in range(n):
        acc = acc * (mn - m_seq(F, k, enum))
    return acc.valuation()
