"""The Carlitz exponential e_C(z) = sum z^(q^j)/D_j, its inverse rho, and the expansion of e_C(tz).

Truncation is decided before summing: on the domain the term sizes are
strictly decreasing, so the first omitted term bounds the tail and the
number of terms follows from exponent arithmetic.  Every returned series
carries the precision it is certified to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from carlitzosc.algebra.field import GF
from carlitzosc.algebra.laurent import Laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.carlitz import CarlitzCache, factorials, f_value
from carlitzosc.errors import ConsistencyError, DomainError, PrecisionExhausted
from carlitzosc.linear import LinearPoly
from carlitzosc.space import CarlitzCoeffs, delta_i

__all__ = [
    "TruncatedEntire", "exp_series", "rho_series", "exp_term_valuation", "rho_term_valuation",
    "carlitz_exp", "rho", "verify_inverse", "InverseReport", "wz_coeffs", "wz_two_route",
    "wz_partial_polys", "wz_partial_coeffs", "coherent_two_route", "in_exp_domain",
]


@lru_cache(maxsize=32)
def _cache(F: GF, depth: int) -> CarlitzCache:
    return factorials(F, depth)


def _depth_cache(F: GF, n: int) -> CarlitzCache:
    # round the depth up so nearby requests share one cache
    return _cache(F, max(8, n))


# -- the formal series ------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedEntire:
    """sum_{j <= N} coeff_j z^(q^j); ``kind`` is "exp" or "rho"."""

    field: GF
    kind: str
    N: int
    terms: tuple  # (exponent q^j, RatFunc coefficient)

    def term_valuation(self, j: int, v: Fraction) -> Fraction:
        if self.kind == "exp":
            return exp_term_valuation(self.field.q, j, v)
        return rho_term_valuation(self.field.q, j, v)

    def tail_valuation(self, v: Fraction) -> Fraction:
        """x-order of the first omitted term for an argument of valuation v."""
        return self.term_valuation(self.N + 1, v)


def exp_series(F: GF, N: int) -> TruncatedEntire:
    c = _depth_cache(F, N)
    return TruncatedEntire(F, "exp", N, tuple((F.q**j, RatFunc(Poly.one(F), c.D[j])) for j in range(N + 1)))


def rho_series(F: GF, N: int) -> TruncatedEntire:
    c = _depth_cache(F, N)
    terms = []
    for n in range(N + 1):
        num = Poly.one(F) if n % 2 == 0 else -Poly.one(F)
        terms.append((F.q**n, RatFunc(num, c.L[n])))
    return TruncatedEntire(F, "rho", N, tuple(terms))


def exp_term_valuation(q: int, j: int, v) -> Fraction:
    """x-order of z^(q^j)/D_j when val(z) = v: q^j v - (q^j - 1)/(q - 1)."""
    return q**j * Fraction(v) - Fraction(q**j - 1, q - 1)


def rho_term_valuation(q: int, n: int, v) -> Fraction:
    """x-order of zeta^(q^n)/L_n: q^n v - n."""
    return q**n * Fraction(v) - n


def in_exp_domain(q: int, v) -> bool:
    """|z| < q^(-1/(q-1)), i.e. val(z) > 1/(q-1), compared as rationals."""
    return v is None or Fraction(v) > Fraction(1, q - 1)


# -- evaluation ---------------------------------------------------------------------------


def _as_series(F: GF, z) -> Laurent:
    if isinstance(z, Laurent):
        s = z
    elif isinstance(z, Poly):
        s = Laurent.from_poly(z)
    elif isinstance(z, RatFunc):
        if z.ram != 1:
            raise DomainError("e_C and rho take unramified arguments")
        s = Laurent.from_ratfunc(z) if len(z.den.coeffs) - (z.den.valuation() or 0) == 1 else None
        if s is None:
            raise DomainError("give a non-monomial rational argument as a truncated series")
    elif isinstance(z, int):
        s = Laurent.from_poly(Poly.const(F, F.from_int(z)))
    else:
        raise TypeError(f"not a scalar: {type(z).__name__}")
    if s.denom != 1:
        raise DomainError("e_C and rho take unramified arguments (denominator 1)")
    return s


def _val(s: Laurent) -> int | None:
    if not s.coeffs:
        if s.prec is None:
            return None
        raise PrecisionExhausted("argument is zero at its precision; its valuation is unknown")
    return s.val


def _choose_N(kind: str, q: int, v: int, prec: int) -> int:
    valuation = exp_term_valuation if kind == "exp" else rho_term_valuation
    N = 0
    while valuation(q, N + 1, v) < prec:
        N += 1
    return N


def _sum(F: GF, series: TruncatedEntire, z: Laurent, target: int) -> Laurent:
    acc = Laurent.zero(F, target)
    zp = z
    for j, (_, coeff) in enumerate(series.terms):
        if j:
            zp = zp.frob()
        num = zp * coeff.num if not coeff.num.is_one() else zp
        if num.exact:
            term = num.div(coeff.den, prec=target)
        else:
            term = num.div(coeff.den)
        acc = acc + term
    return acc


def _evaluate(kind: str, F: GF, z, N: int | None, prec: int | None) -> Laurent:
    q = F.q
    s = _as_series(F, z)
    v = _val(s)
    if v is None:
        return Laurent.zero(F)
    if kind == "exp" and not in_exp_domain(q, v):
        raise DomainError(f"|z| >= q^(-1/(q-1)): val(z) = {v} must exceed 1/(q-1) = {Fraction(1, q - 1)}")
    if kind == "rho" and v < 1:
        raise DomainError(f"|zeta| >= 1: val(zeta) = {v} must be at least 1")
    if N is None and prec is None:
        if s.prec is None:
            raise PrecisionExhausted("exact argument: give a target precision or a term count")
        prec = s.prec
    if N is None:
        N = _choose_N(kind, q, v, prec)
    series = exp_series(F, N) if kind == "exp" else rho_series(F, N)
    tail = series.tail_valuation(Fraction(v))
    cert = int(-((-tail) // 1))  # everything below x^tail is exact
    target = cert if prec is None else min(cert, prec)
    out = _sum(F, series, s, target)
    if prec is not None:
        got = out.precision()
        if got is not None and got < prec:
            raise PrecisionExhausted(
                f"{'e_C' if kind == 'exp' else 'rho'} certified only to x^({got}), requested x^{prec}"
            )
        out = out.truncate(prec)
    return out


def carlitz_exp(F: GF, z, N: int | None = None, prec: int | None = None) -> Laurent:
    """e_C(z) with certified precision; ``N`` fixes the last kept term, ``prec`` the target."""
    return _evaluate("exp", F, z, N, prec)


def rho(F: GF, zeta, N: int | None = None, prec: int | None = None) -> Laurent:
    """rho(zeta) = sum (-1)^n zeta^(q^n)/L_n, checking |rho(zeta)| <= max(|zeta|, q|zeta|^q)."""
    out = _evaluate("rho", F, zeta, N, prec)
    s = _as_series(F, zeta)
    v = _val(s)
    if v is not None and out.coeffs:
        q = F.q
        w = out.valuation()
        if w < min(v, q * v - 1):
            raise ConsistencyError(f"|rho(zeta)| bound violated: val {w} < min({v}, {q * v - 1})")
        if in_exp_domain(q, v) and not in_exp_domain(q, w):
            raise ConsistencyError("rho(zeta) left the domain of e_C")
    return out


@dataclass(frozen=True)
class InverseReport:
    ok: bool
    precision: Fraction  # equality confirmed modulo x^precision
    zeta: Laurent
    composite: Laurent


def verify_inverse(F: GF, zeta, prec: int) -> InverseReport:
    """Check e_C(rho(zeta)) = zeta modulo x^prec."""
    s = _as_series(F, zeta)
    if _val(s) is None:
        zero = Laurent.zero(F)
        return InverseReport(True, Fraction(prec), zero, zero)
    w = rho(F, s, prec=prec)
    comp = carlitz_exp(F, w, prec=prec)
    ok, at = comp.agree(s.truncate(prec) if s.exact else s)
    return InverseReport(ok, at if at is not None else Fraction(prec), s, comp)


# -- the expansion of w_z(t) = e_C(tz) ----------------------------------------------------------


def wz_coeffs(F: GF, z, M: int, prec: int) -> CarlitzCoeffs:
    """b_n = e_C(z)^(q^n) for n < M."""
    E = carlitz_exp(F, z, prec=prec)
    out = []
    for _ in range(M):
        out.append(E)
        E = E.frob()
    return CarlitzCoeffs(F, out, truncated=True)


def wz_two_route(F: GF, z, t: Poly, M: int, prec: int) -> tuple[bool, Fraction, Laurent, Laurent]:
    """Compare sum_{n<M} b_n f_n(t) with e_C(tz).

    The omitted terms have |b_n f_n(t)| <= |z|^(q^n), so the comparison is
    certified modulo x^min(prec, q^M val(z)).  Returns (ok, that exponent, basis route, direct route).
    """
    s = _as_series(F, z)
    v = _val(s)
    if v is None:
        zero = Laurent.zero(F)
        return True, Fraction(prec), zero, zero
    bound = min(prec, F.q**M * v)
    c = _depth_cache(F, M)
    b = wz_coeffs(F, s, M, prec)
    basis = Laurent.zero(F, bound)
    for n in range(M):
        basis = basis + b[n] * f_value(c, n, t)
    direct = carlitz_exp(F, s * t, prec=bound) if not t.is_zero() else Laurent.zero(F)
    ok, at = basis.truncate(bound).agree(direct)
    return ok, (at if at is not None else Fraction(bound)), basis, direct


def _exp_linear(F: GF, N: int) -> LinearPoly:
    return LinearPoly(F, [coeff for _, coeff in exp_series(F, N).terms])


def wz_partial_polys(F: GF, N: int, n: int) -> tuple[LinearPoly, LinearPoly]:
    """(Delta^(n) e_C^(N), (e_C^(N-n))^(q^n)) as F_q-linear polynomials with exact coefficients."""
    if not 0 <= n <= N:
        raise ValueError("need 0 <= n <= N")
    c = _depth_cache(F, N)
    lhs = delta_i(c, _exp_linear(F, N), n)
    rhs = _exp_linear(F, N - n)
    for _ in range(n):
        rhs = rhs.frob()
    return lhs, rhs


def wz_partial_coeffs(F: GF, z, N: int, prec: int) -> list[Laurent]:
    """b_n^(N)(z) for n <= N, after checking the polynomial identity behind them."""
    s = _as_series(F, z)
    out = []
    for n in range(N + 1):
        lhs, rhs = wz_partial_polys(F, N, n)
        if lhs != rhs:
            raise ConsistencyError(f"Delta^({n}) e_C^({N}) differs from (e_C^({N - n}))^(q^{n})")
        val = Laurent.zero(F, prec)
        zp = s
        for j, u in enumerate(lhs.coeffs):
            if j:
                zp = zp.frob()
            if u.is_zero():
                continue
            num = zp * u.num
            val = val + (num.div(u.den, prec=prec) if num.exact else num.div(u.den))
        out.append(val)
    return out


# -- coherent states through e_C ----------------------------------------------------------------


def coherent_two_route(
    F: GF, nu, c0, t: Poly, M: int, prec: int
) -> tuple[bool, Fraction, Laurent, Laurent]:
    """For lam = nu^(q-1): sum_{n<M} c_n f_n(t) against mu^(-1) e_C(t rho(c0 mu)), mu = nu^q.

    Needs |c0 mu| <= q^-2.  Omitted basis terms have size at most
    |mu|^(-1) |c0 mu|^(q^n); the comparison is certified modulo the smaller of
    that and x^prec.
    """
    from carlitzosc.space import as_scalar, coherent_closed_form

    nu_s = as_scalar(F, nu)
    mu = nu_s.frob()
    c = _as_series(F, as_scalar(F, c0) * mu if not isinstance(c0, Laurent) else c0 * mu)
    vc = _val(c)
    if vc is None:
        zero = Laurent.zero(F)
        return True, Fraction(prec), zero, zero
    if vc < 2:
        raise DomainError(f"need |c| <= q^-2 for c = c0 * nu^q, got val {vc}")
    vmu = mu.valuation()
    bound = min(Fraction(prec), F.q**M * vc - vmu)
    P = int(-((-bound) // 1))
    cache = _depth_cache(F, M)
    coeffs = coherent_closed_form(F, nu_s, c0, M)
    basis = Laurent.zero(F, P)
    for n in range(M):
        basis = basis + coeffs[n] * f_value(cache, n, t)
    # e_C(t z) is known to x^P' once t z is; mu^(-1) shifts by -val(mu)
    inner = P + int(vmu)
    z = rho(F, c, prec=max(inner, 1))
    direct = carlitz_exp(F, z * t, prec=inner) if not t.is_zero() else Laurent.zero(F)
    direct = direct * (1 / mu if isinstance(mu, RatFunc) else mu.inverse())
    ok, at = basis.truncate(P).agree(direct)
    return ok, (at if at is not None else Fraction(P)), basis, direct
