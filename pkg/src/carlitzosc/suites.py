"""Identity-verification suites behind ``carlitzosc verify``.

Each suite runs named checks and records, per check, how many cases ran and
passed, the first counterexample (serialized) and, for analytic checks, the
precision at which equality was certified.  Random cases come from a
``random.Random`` seeded by (seed, suite name), so reports are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable

from carlitzosc import carlitz
from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF
from carlitzosc.algebra.laurent import Laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc
from carlitzosc.carlitz import TPoly
from carlitzosc.errors import DomainError, PrecisionExhausted
from carlitzosc.linear import LinearPoly
from carlitzosc import expseries as ex
from carlitzosc import space as sp

__all__ = ["RunConfig", "SuiteReport", "Check", "SUITES", "run_suite", "oracle_depth"]


@dataclass(frozen=True)
class RunConfig:
    p: int = 2
    gamma: int = 1
    modulus: tuple | None = None
    imax: int = 8
    M: int = 8
    prec: int = 64
    ram_cap: int | None = None
    seed: int = 0
    format: str = "text"
    cases: int | None = None  # overrides the per-suite random case counts

    def field(self) -> GF:
        return GF(self.p, self.gamma, list(self.modulus) if self.modulus else None)

    @property
    def q(self) -> int:
        return self.p**self.gamma

    @property
    def cap(self) -> int:
        return self.ram_cap if self.ram_cap is not None else self.q**2

    def n_cases(self, default: int) -> int:
        return default if self.cases is None else self.cases


# -- reporting -----------------------------------------------------------------------------


def ser(v) -> Any:
    """JSON-friendly rendering of a value for counterexamples."""
    from carlitzosc.serialize import format_scalar

    if isinstance(v, (Poly, RatFunc, Laurent)):
        return format_scalar(v)
    if isinstance(v, (LinearPoly, TPoly, sp.CarlitzCoeffs)):
        return str(v)
    if isinstance(v, AbsValue):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [ser(u) for u in v]
    if isinstance(v, dict):
        return {k: ser(u) for k, u in v.items()}
    return v


@dataclass
class Check:
    name: str
    run: int = 0
    passed: int = 0
    counterexample: dict | None = None
    precision: Fraction | None = None  # smallest certified precision over the cases
    exhausted: bool = False

    def record(self, ok: bool, inputs: dict | None = None, precision=None) -> None:
        self.run += 1
        if ok:
            self.passed += 1
        elif self.counterexample is None:
            self.counterexample = ser(inputs or {})
        if precision is not None:
            p = Fraction(precision)
            self.precision = p if self.precision is None else min(self.precision, p)

    def attempt(self, fn: Callable[[], Any], inputs: dict | None = None) -> None:
        """Run one case.  ``fn`` returns a bool or (bool, certified precision)."""
        try:
            out = fn()
        except PrecisionExhausted as e:
            self.exhausted = True
            self.record(False, {**(inputs or {}), "error": f"{type(e).__name__}: {e}"})
            return
        except Exception as e:  # a broken identity may surface as any arithmetic error
            self.record(False, {**(inputs or {}), "error": f"{type(e).__name__}: {e}"})
            return
        if isinstance(out, tuple):
            self.record(bool(out[0]), inputs, out[1])
        else:
            self.record(bool(out), inputs)

    @property
    def ok(self) -> bool:
        return self.passed == self.run

    def to_dict(self) -> dict:
        d = {"name": self.name, "run": self.run, "passed": self.passed}
        if self.precision is not None:
            d["certified_precision"] = str(self.precision)
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class SuiteReport:
    suite: str
    config: RunConfig
    checks: list[Check] = dc_field(default_factory=list)
    seconds: float | None = None

    def check(self, name: str) -> Check:
        c = Check(name)
        self.checks.append(c)
        return c

    @property
    def run(self) -> int:
        return sum(c.run for c in self.checks)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def status(self) -> int:
        if all(c.ok for c in self.checks):
            return 0
        if any(not c.ok and not c.exhausted for c in self.checks):
            return 1
        return 3

    def first_counterexample(self) -> dict | None:
        for c in self.checks:
            if c.counterexample is not None:
                return {"check": c.name, **c.counterexample}
        return None

    def to_dict(self) -> dict:
        d = {
            "suite": self.suite,
            "q": self.config.q,
            "seed": self.config.seed,
            "cases_run": self.run,
            "cases_passed": self.passed,
            "status": "pass" if self.status == 0 else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
        ce = self.first_counterexample()
        if ce is not None:
            d["first_counterexample"] = ce
        if self.seconds is not None:
            d["wall_time_s"] = round(self.seconds, 3)
        return d

    def to_text(self) -> str:
        import json

        head = f"suite {self.suite} (q={self.config.q}, seed={self.config.seed}): {self.passed}/{self.run} passed"
        if self.seconds is not None:
            head += f" in {self.seconds:.2f}s"
        lines = [head]
        for c in self.checks:
            mark = "pass" if c.ok else "FAIL"
            line = f"  [{mark}] {c.name}: {c.passed}/{c.run}"
            if c.precision is not None:
                line += f" (certified to x^({c.precision}))"
            lines.append(line)
            if c.counterexample is not None:
                lines.append("    counterexample: " + json.dumps(c.counterexample, sort_keys=True))
        return "\n".join(lines)


# -- random inputs -----------------------------------------------------------------------------


def rand_poly(F: GF, rng: random.Random, maxdeg: int, min_val: int = 0, nonzero: bool = False) -> Poly:
    while True:
        c = [0] * min_val + [rng.randrange(F.q) for _ in range(maxdeg - min_val + 1)]
        if nonzero and c[min_val] == 0:
            c[min_val] = rng.randrange(1, F.q)
        p = Poly(F, c)
        if p or not nonzero:
            return p


def rand_coeffs(F: GF, rng: random.Random, M: int, rational: bool = True) -> sp.CarlitzCoeffs:
    """M coefficients with |c_i| <= 1: polynomials, and now and then p/u with u(0) != 0."""
    out = []
    for _ in range(M):
        r = rng.random()
        if r < 0.15:
            out.append(RatFunc.zero(F))
        elif rational and r < 0.3:
            num = rand_poly(F, rng, 2)
            den = Poly(F, [1]) + rand_poly(F, rng, 2, min_val=1)
            out.append(RatFunc(num, den))
        else:
            out.append(RatFunc.from_poly(rand_poly(F, rng, 3)))
    return sp.CarlitzCoeffs(F, out)


def oracle_depth(q: int) -> int:
    table = {2: 10, 3: 7, 4: 5}
    if q in table:
        return table[q]
    i = 0
    while q ** (i + 1) <= carlitz.DEFAULT_ORACLE_BUDGET:
        i += 1
    return i


def all_polys_below(F: GF, deg: int) -> list[Poly]:
    return [carlitz.m_seq(F, n) for n in range(F.q**deg)]


# -- suites ----------------------------------------------------------------------------------------


def suite_basis(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    q = F.q
    cache = carlitz.factorials(F, cfg.imax)

    c = rep.check("product formula = sum formula for e_i")
    for i in range(min(cfg.imax, oracle_depth(q)) + 1):
        c.attempt(lambda i=i: carlitz.e_product_oracle(F, i) == carlitz.e_poly(cache, i), {"i": i})

    c = rep.check("D_i recurrence = closed product")
    for i in range(cfg.imax + 1):
        c.attempt(lambda i=i: cache.D[i] == carlitz.closed_D(F, i), {"i": i, "D_i": cache.D[i]})
    c = rep.check("L_i recurrence = closed product")
    for i in range(cfg.imax + 1):
        c.attempt(lambda i=i: cache.L[i] == carlitz.closed_L(F, i), {"i": i, "L_i": cache.L[i]})
    c = rep.check("x-order of D_i = (q^i-1)/(q-1)")
    for i in range(cfg.imax + 1):
        c.attempt(lambda i=i: cache.D[i].valuation() == (q**i - 1) // (q - 1), {"i": i})
    c = rep.check("x-order of L_i = i")
    for i in range(cfg.imax + 1):
        c.attempt(lambda i=i: cache.L[i].valuation() == i, {"i": i})

    c = rep.check("Carlitz binomials are polynomials")
    for i in range(cfg.imax + 1):
        for j in range(i + 1):
            c.attempt(lambda i=i, j=j: not carlitz.carlitz_binom(cache, i, j).is_zero(), {"i": i, "j": j})

    c = rep.check("e_i(m) = 0 for deg m < i")
    for i in range(1, cfg.imax + 1):
        if q**i > 256:
            break
        for m in all_polys_below(F, i):
            c.attempt(lambda i=i, m=m: carlitz.e_poly(cache, i)(m).is_zero(), {"i": i, "m": m})

    c = rep.check("e_i = e_{i-1}^q - D_{i-1}^(q-1) e_{i-1}")
    for i in range(1, cfg.imax + 1):
        def run(i=i):
            prev = carlitz.e_poly(cache, i - 1)
            return carlitz.e_poly(cache, i) == prev.frob() - prev.scale(cache.D[i - 1] ** (q - 1))
        c.attempt(run, {"i": i})

    c = rep.check("h_{q^i} = f_i")
    for i in range(cfg.imax + 1):
        if q**i > 64:
            break
        def run(i=i):
            h, _, _ = carlitz.h_poly(cache, q**i)
            return h == TPoly.from_linear(carlitz.f_poly(cache, i))
        c.attempt(run, {"i": i})
    c = rep.check("deg h_j = j")
    for j in range(min(q**3, 64)):
        if len(carlitz.DigitExpansion.of(j, q).digits) > cfg.imax + 1:
            break
        c.attempt(lambda j=j: carlitz.h_poly(cache, j)[0].degree() == j, {"j": j})

    c = rep.check("Delta f_i = f_{i-1}^q")
    c.attempt(lambda: sp.delta(cache, carlitz.f_poly(cache, 0)).is_zero(), {"i": 0})
    for i in range(1, cfg.imax + 1):
        c.attempt(
            lambda i=i: sp.delta(cache, carlitz.f_poly(cache, i)) == carlitz.f_poly(cache, i - 1).frob(),
            {"i": i},
        )


def suite_orthonormal(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    rng = random.Random(f"{cfg.seed}:orthonormal")
    # the grid has q^(M+2) points; beyond q = 3 keep it small
    Mmax = min(6 if F.q <= 3 else 3, cfg.imax + 1)
    cache = carlitz.factorials(F, max(cfg.imax, Mmax))

    c = rep.check("sampled norm over deg t < M+2 = max |c_i|")
    for _ in range(cfg.n_cases(100)):
        M = rng.randint(1, Mmax)
        co = rand_coeffs(F, rng, M)
        c.attempt(lambda co=co, M=M: sp.sampled_norm(cache, co, M + 2) == sp.norm(co),
                  {"coeffs": co, "bound": M + 2})

    c = rep.check("sampled norm: combination route = direct evaluation")
    for _ in range(cfg.n_cases(100) // 20 or 1):
        M = rng.randint(1, min(3, Mmax))
        co = rand_coeffs(F, rng, M)
        bound = min(M + 2, 4 if F.q <= 3 else 3)
        c.attempt(
            lambda co=co, b=bound: sp.sampled_norm(cache, co, b) == sp.sampled_norm(cache, co, b, "direct"),
            {"coeffs": co, "bound": bound},
        )

    c = rep.check("f_i has norm 1, attained on deg t <= i")
    for i in range(Mmax):
        u = sp.CarlitzCoeffs.unit(F, i)
        c.attempt(lambda u=u, i=i: sp.sampled_norm(cache, u, i + 1) == AbsValue.ONE == sp.norm(u), {"i": i})

    c = rep.check("x f_0 has norm q^-1")
    xf0 = sp.CarlitzCoeffs(F, [Poly.x(F)])
    c.attempt(lambda: sp.sampled_norm(cache, xf0, 3) == sp.norm(xf0) == AbsValue(Fraction(1)), {})

    c = rep.check("to_carlitz(from_carlitz(c)) = c")
    for _ in range(cfg.n_cases(100) // 5 or 1):
        co = rand_coeffs(F, rng, rng.randint(1, Mmax))
        c.attempt(lambda co=co: sp.to_carlitz(cache, sp.from_carlitz(cache, co)).agree(co), {"coeffs": co})

    c = rep.check("t^q = D_1 f_1 + f_0")
    one = RatFunc.one(F)
    c.attempt(lambda: sp.to_carlitz(cache, LinearPoly.monomial(F, 1)).agree(
        sp.CarlitzCoeffs(F, [one, RatFunc.from_poly(cache.D[1])])), {})


def _prop2_bound(q: int) -> int:
    return 32 if q == 2 else q**3


def _prop2_checks(cfg: RunConfig, rep: SuiteReport, F: GF, cache, enum, tag: str) -> None:
    q = F.q
    c = rep.check(f"kappa_n = l_n, n < 512{tag}")
    for n in range(512):
        c.attempt(lambda n=n: (lambda lk: lk[0] == lk[1])(carlitz.l_and_kappa(F, n, enum)), {"n": n})
    c = rep.check(f"kappa_n by multiplying out P_n(m_n), n < 64{tag}")
    for n in range(64):
        c.attempt(lambda n=n: carlitz.kappa_by_product(F, n, enum) == carlitz.l_and_kappa(F, n, enum)[0], {"n": n})

    nmax = _prop2_bound(q)
    depth = cache.imax
    c_unit = rep.check(f"|c_nn| = 1{tag}")
    c_int = rep.check(f"|c_ni| <= 1{tag}")
    c_lead = rep.check(f"c_nn = P_n(m_n)/Gamma_n{tag}")
    c_gamma = rep.check(f"|Gamma_n| = q^-l_n{tag}")
    for n in range(nmax):
        if len(carlitz.DigitExpansion.of(n, q).digits) > depth + 1:
            break

        def coeffs(n=n):
            return carlitz.expand_h_in_Q(cache, n, enum)

        try:
            cs = coeffs()
        except Exception as e:
            for chk in (c_unit, c_int, c_lead):
                chk.record(False, {"n": n, "error": f"{type(e).__name__}: {e}"})
            continue
        c_unit.record(cs[n].valuation() == 0, {"n": n, "c_nn": cs[n]})
        c_int.record(all(ci.is_zero() or ci.valuation() >= 0 for ci in cs), {"n": n, "c": cs})

        def lead(n=n, cs=cs):
            mn = carlitz.m_seq(F, n, enum)
            P = Poly.one(F)
            for k in range(n):
                P = P * (mn - carlitz.m_seq(F, k, enum))
            _, _, Gamma = carlitz.h_poly(cache, n)
            return cs[n] == RatFunc(P, Gamma)

        c_lead.attempt(lead, {"n": n})

        def gamma(n=n):
            _, _, Gamma = carlitz.h_poly(cache, n)
            return Gamma.valuation() == carlitz.l_and_kappa(F, n, enum)[0]

        c_gamma.attempt(gamma, {"n": n})

    c = rep.check(f"Q_j(m_k) = [j = k] for k <= j < 16{tag}")
    for j in range(16):
        def run(j=j):
            Q = carlitz.Q_poly(F, j, enum)
            return all(Q(carlitz.m_seq(F, k, enum)) == (1 if k == j else 0) for k in range(j + 1))
        c.attempt(run, {"j": j})


def suite_prop2(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    need = len(carlitz.DigitExpansion.of(_prop2_bound(F.q) - 1, F.q).digits) - 1
    cache = carlitz.factorials(F, max(cfg.imax, need))
    _prop2_checks(cfg, rep, F, cache, None, "")
    if F.q >= 4:
        _prop2_checks(cfg, rep, F, cache, carlitz.alternative_enumeration(F), " (alternative enumeration)")


def exp_min_val(q: int) -> int:
    """Smallest integer valuation inside |z| < q^(-1/(q-1))."""
    return 2 if q == 2 else 1


def rand_small(F: GF, rng: random.Random, vmin: int, deg: int = 6) -> Poly:
    return rand_poly(F, rng, vmin + deg, min_val=vmin, nonzero=True)


def suite_exp(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    q = F.q
    rng = random.Random(f"{cfg.seed}:exp")
    vmin = exp_min_val(q)
    P = cfg.prec
    x = Poly.x(F)

    c = rep.check("e_C(rho(zeta)) = zeta")
    zetas = [rand_small(F, rng, rng.randint(vmin, vmin + 2)) for _ in range(cfg.n_cases(50))]
    for z in zetas:
        def run(z=z):
            r = ex.verify_inverse(F, z, P)
            return r.ok and r.precision >= P, r.precision
        c.attempt(run, {"zeta": z, "prec": P})

    c = rep.check("val rho(zeta) = val zeta and |rho| <= max(|zeta|, q|zeta|^q)")
    for z in zetas[:10]:
        c.attempt(lambda z=z: ex.rho(F, z, prec=P).valuation() == z.valuation(), {"zeta": z})

    c = rep.check("val e_C(z) = val z")
    for z in zetas[:10]:
        c.attempt(lambda z=z: ex.carlitz_exp(F, z, prec=P).valuation() == z.valuation(), {"z": z})

    c = rep.check("e_C summed in reverse order agrees")
    for z in zetas[:5]:
        def run(z=z):
            fwd = ex.carlitz_exp(F, z, prec=P)
            N = ex._choose_N("exp", q, z.valuation(), P)
            s = Laurent.from_poly(z)
            acc = Laurent.zero(F, P)
            cache = carlitz.factorials(F, N)
            for j in range(N, -1, -1):
                acc = acc + s.frob(j).div(cache.D[j], prec=P)
            ok, at = fwd.agree(acc)
            return ok, at
        c.attempt(run, {"z": z})

    c = rep.check("term sizes strictly decrease; tail bound = first omitted term")
    for z in zetas[:10]:
        def run(z=z):
            v = z.valuation()
            N = ex._choose_N("exp", q, v, P)
            vals = [ex.exp_term_valuation(q, j, v) for j in range(N + 3)]
            s = ex.exp_series(F, N)
            return all(a < b for a, b in zip(vals, vals[1:])) and s.tail_valuation(Fraction(v)) == vals[N + 1] >= P
        c.attempt(run, {"z": z})

    c = rep.check("Delta^(n) e_C^(N) = (e_C^(N-n))^(q^n), n <= N <= 5")
    for N in range(6):
        for n in range(N + 1):
            c.attempt(lambda N=N, n=n: (lambda lr: lr[0] == lr[1])(ex.wz_partial_polys(F, N, n)), {"N": N, "n": n})

    c = rep.check("sum_{n<M} e_C(z)^(q^n) f_n(t) = e_C(tz)")
    zs = [x**2] if q == 2 else [x, x**2, x + x**2]
    ts = [Poly.one(F), x, x + 1, x**2]
    for z in zs:
        for t in ts:
            c.attempt(lambda z=z, t=t: ex.wz_two_route(F, z, t, 8, P)[:2], {"z": z, "t": t, "M": 8})

    c = rep.check("arguments outside |z| < q^(-1/(q-1)) are rejected")
    bad = [x, x + x**2] if q == 2 else [Poly.one(F), x + 1]
    for z in bad:
        def run(z=z):
            try:
                ex.carlitz_exp(F, z, prec=P)
            except DomainError:
                return True
            return False
        c.attempt(run, {"z": z})


def suite_oscillator(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    q = F.q
    cap = cfg.cap
    rng = random.Random(f"{cfg.seed}:oscillator")
    cache = carlitz.factorials(F, cfg.imax)
    unit = lambda i: sp.CarlitzCoeffs.unit(F, i)  # noqa: E731
    br = cache.brackets

    c = rep.check("Delta f_i = f_{i-1}^q")
    c.attempt(lambda: sp.delta(cache, carlitz.f_poly(cache, 0)).is_zero(), {"i": 0})
    for i in range(1, cfg.imax + 1):
        c.attempt(lambda i=i: sp.delta(cache, carlitz.f_poly(cache, i)) == carlitz.f_poly(cache, i - 1).frob(), {"i": i})
    c = rep.check("a+ f_{i-1} = [i] f_i")
    for i in range(1, cfg.imax + 1):
        c.attempt(lambda i=i: sp.a_plus(cache, unit(i - 1)).agree(unit(i).scale(br[i])), {"i": i})
    c = rep.check("a- f_i = f_{i-1}, a- f_0 = 0")
    c.attempt(lambda: sp.a_minus(unit(0), cap).M == 0, {"i": 0})
    for i in range(1, cfg.imax + 1):
        c.attempt(lambda i=i: sp.a_minus(unit(i), cap).agree(unit(i - 1)), {"i": i})
    c = rep.check("a+a- f_i = [i] f_i")
    c.attempt(lambda: sp.number_op(cache, unit(0), cap).agree(sp.CarlitzCoeffs(F, [])), {"i": 0})
    for i in range(1, cfg.imax + 1):
        c.attempt(lambda i=i: sp.number_op(cache, unit(i), cap).agree(unit(i).scale(br[i])), {"i": i})
    c = rep.check("|[i]| = q^-1")
    for i in range(1, cfg.imax + 1):
        c.attempt(lambda i=i: br[i].valuation() == 1, {"i": i})

    Mmax = min(cfg.M, cfg.imax)
    randoms = [rand_coeffs(F, rng, rng.randint(1, Mmax), rational=False) for _ in range(cfg.n_cases(100))]
    c = rep.check("(a-a+ - a+a-) c = [1]^(1/q) c")
    for co in randoms:
        c.attempt(lambda co=co: (lambda lr: lr[0].agree(lr[1]))(sp.commutator_defect(cache, co, cap)), {"coeffs": co})
    c = rep.check("((a-a+ - a+a-) c)^q = [1] c^q, no roots")
    for co in randoms:
        c.attempt(lambda co=co: (lambda lr: lr[0] == lr[1])(sp.commutator_k_only(cache, co)), {"coeffs": co})
    c = rep.check("ramification denominator of the commutator is q")
    for co in randoms[:10]:
        def run(co=co):
            lhs, _ = sp.commutator_defect(cache, co, cap)
            return all(v.is_zero() or v.ram == q for v in lhs.coeffs)
        c.attempt(run, {"coeffs": co})

    small = [rand_coeffs(F, rng, rng.randint(1, min(3, cfg.imax - 1)), rational=False) for _ in range(4)]
    samples = all_polys_below(F, 3)
    c = rep.check("a+ coefficient rule = phi^q - phi pointwise")
    for co in small:
        ap = sp.a_plus(cache, co)
        for t in samples:
            c.attempt(lambda co=co, ap=ap, t=t: sp.eval_fn(cache, ap, t) == sp.a_plus_pointwise(cache, co, t),
                      {"coeffs": co, "t": t})
    c = rep.check("Delta: coefficient rule = monomial rule = phi(xt) - x phi(t)")
    for co in small:
        phi = sp.from_carlitz(cache, co)
        dc = sp.delta_coeffs_expanded(cache, co)
        c.attempt(lambda co=co, phi=phi, dc=dc: sp.to_carlitz(cache, sp.delta(cache, phi)).agree(dc), {"coeffs": co})
        for t in samples:
            c.attempt(
                lambda phi=phi, dc=dc, t=t: sp.eval_fn(cache, dc, t) == sp.delta_pointwise(phi, t),
                {"coeffs": co, "t": t},
            )
    c = rep.check("(a- phi)^q = Delta phi pointwise")
    for co in small:
        am = sp.a_minus(co, cap)
        phi = sp.from_carlitz(cache, co)
        for t in samples:
            c.attempt(lambda am=am, phi=phi, t=t: sp.eval_fn(cache, am, t).frob() == sp.delta_pointwise(phi, t),
                      {"coeffs": co, "t": t})

    c = rep.check("F_q-linearity of a+, a-, Delta")
    for k in range(0, len(randoms) - 1, 10):
        u, v = randoms[k], randoms[k + 1]
        beta = rng.randrange(q)
        def run(u=u, v=v, beta=beta):
            b = RatFunc.const(F, beta)
            ok = sp.a_plus(cache, u + v).agree(sp.a_plus(cache, u) + sp.a_plus(cache, v))
            ok &= sp.a_plus(cache, u.scale(b)).agree(sp.a_plus(cache, u).scale(b))
            ok &= sp.a_minus(u + v, cap).agree(sp.a_minus(u, cap) + sp.a_minus(v, cap))
            ok &= sp.a_minus(u.scale(b), cap).agree(sp.a_minus(u, cap).scale(b))
            ok &= sp.delta_coeffs_expanded(cache, u.scale(b)).agree(sp.delta_coeffs_expanded(cache, u).scale(b))
            return ok
        c.attempt(run, {"u": u, "v": v, "beta": beta})

    # the q-th root enlarges small coefficients, so the sharp bound is ||phi||^(1/q);
    # ||a- phi|| <= ||phi|| holds only once ||phi|| >= 1
    c = rep.check("||a- phi|| = sup_{i>=1} |c_i|^(1/q) <= ||phi||^(1/q)")
    for co in randoms:
        def run(co=co):
            am = sp.norm(sp.a_minus(co, cap))
            tail = sp.norm(sp.CarlitzCoeffs(F, co.coeffs[1:])) ** Fraction(1, q)
            return am == tail and am <= sp.norm(co) ** Fraction(1, q)
        c.attempt(run, {"coeffs": co})
    c = rep.check("||a- phi|| <= ||phi|| when ||phi|| >= 1")
    for co in randoms:
        vals = [ci.valuation() for ci in co.coeffs if not ci.is_zero()]
        if not vals:
            continue
        big = co.scale(RatFunc.x_power(F, -int(min(vals)) - rng.randint(0, 2)))
        c.attempt(lambda big=big: sp.norm(sp.a_minus(big, cap)) <= sp.norm(big), {"coeffs": big})

    c = rep.check("Delta^(i): recursion = closed product")
    for co in randoms[:10]:
        phi = sp.from_carlitz(cache, co)
        i = rng.randint(1, 4)
        c.attempt(lambda phi=phi, i=i: sp.delta_i(cache, phi, i) == sp.delta_i(cache, phi, i, "closed"),
                  {"coeffs": co, "i": i})
    c = rep.check("Delta^(1) = Delta")
    for co in randoms[:10]:
        phi = sp.from_carlitz(cache, co)
        c.attempt(lambda phi=phi: sp.delta_i(cache, phi, 1) == sp.delta(cache, phi), {"coeffs": co})
    c = rep.check("Delta^(n) t^(q^j) = 0 for n > j")
    for j in range(4):
        for n in range(j + 1, 5):
            c.attempt(lambda j=j, n=n: sp.delta_i(cache, LinearPoly.monomial(F, j), n).is_zero(), {"j": j, "n": n})
    c = rep.check("Delta^(n) f_n (1) = 1")
    for n in range(min(cfg.imax, 4) + 1):
        c.attempt(lambda n=n: sp.delta_i(cache, carlitz.f_poly(cache, n), n)(Poly.one(F)) == 1, {"n": n})


def _rand_lambda_c0(F: GF, rng: random.Random) -> tuple[RatFunc, RatFunc]:
    q = F.q
    vl = rng.randint(-2, 2)
    # smallest integer v with vl q/(q-1) + v > 0
    lower = Fraction(-vl * q, q - 1)
    vc = int(lower) + 1 if lower >= 0 or lower.denominator == 1 else int(lower) + (0 if lower < 0 else 1)
    while Fraction(vl * q, q - 1) + vc <= 0:
        vc += 1
    vc += rng.randint(0, 1)
    unit = lambda: rand_poly(F, rng, 2, nonzero=True)  # noqa: E731
    lam = RatFunc(unit(), Poly.one(F)) * RatFunc.x_power(F, vl)
    c0 = RatFunc(unit(), Poly.one(F)) * RatFunc.x_power(F, vc)
    return lam, c0


def suite_coherent(cfg: RunConfig, rep: SuiteReport) -> None:
    F = cfg.field()
    q = F.q
    cap = cfg.cap
    rng = random.Random(f"{cfg.seed}:coherent")
    M = min(cfg.M, 6)
    x = Poly.x(F)

    pairs = [_rand_lambda_c0(F, rng) for _ in range(cfg.n_cases(20))]
    c = rep.check("a- u = lambda u")
    c_dec = rep.check("|c_n| strictly decreasing")
    for lam, c0 in pairs:
        def run(lam=lam, c0=c0):
            u = sp.coherent_state(F, lam, c0, M)
            return sp.a_minus(u, cap).agree(u.scale(lam))
        c.attempt(run, {"lambda": lam, "c0": c0, "M": M})

        def dec(lam=lam, c0=c0):
            u = sp.coherent_state(F, lam, c0, M)
            vals = [ci.valuation() for ci in u.coeffs]
            return all(a < b for a, b in zip(vals, vals[1:]))
        c_dec.attempt(dec, {"lambda": lam, "c0": c0})

    c = rep.check("closed form = recursion for lambda = nu^(q-1)")
    for _ in range(cfg.n_cases(20) // 2 or 1):
        nu = RatFunc(rand_poly(F, rng, 2, nonzero=True)) * RatFunc.x_power(F, rng.randint(-1, 1))
        vmu = q * nu.valuation()
        c0 = RatFunc(rand_poly(F, rng, 2, nonzero=True)) * RatFunc.x_power(F, int(-vmu) + 1 + rng.randint(0, 1))
        def run(nu=nu, c0=c0):
            rec = sp.coherent_state(F, nu ** (q - 1), c0, M)
            return sp.coherent_closed_form(F, nu, c0, M).agree(rec)
        c.attempt(run, {"nu": nu, "c0": c0})

    c = rep.check("sum c_n f_n(t) = mu^-1 e_C(t rho(c0 mu)), |c0 mu| <= q^-2")
    for _ in range(3):
        nu = RatFunc(rand_poly(F, rng, 1, nonzero=True)) * RatFunc.x_power(F, rng.randint(0, 1))
        vmu = q * nu.valuation()
        c0 = RatFunc(rand_poly(F, rng, 2, nonzero=True)) * RatFunc.x_power(F, int(2 - vmu) + rng.randint(0, 1))
        for t in [Poly.one(F), x, x + 1]:
            c.attempt(lambda nu=nu, c0=c0, t=t: ex.coherent_two_route(F, nu, c0, t, M, min(cfg.prec, 48))[:2],
                      {"nu": nu, "c0": c0, "t": t})

    c = rep.check("divergent data are rejected")
    lam = RatFunc.x_power(F, -q + 1)
    c0 = RatFunc.x_power(F, q - 1)  # |lam|^(q/(q-1)) |c0| = q^(q - (q-1)) > 1 ... exponent sum -q + q-1 < 0
    def run():
        try:
            sp.coherent_state(F, lam, c0, 3)
        except DomainError:
            return True
        return False
    c.attempt(run, {"lambda": lam, "c0": c0})


SUITES: dict[str, Callable[[RunConfig, SuiteReport], None]] = {
    "basis": suite_basis,
    "orthonormal": suite_orthonormal,
    "prop2": suite_prop2,
    "exp": suite_exp,
    "oscillator": suite_oscillator,
    "coherent": suite_coherent,
}


def run_suite(name: str, cfg: RunConfig, timing: bool = False) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    rep = SuiteReport(name, cfg)
    t0 = time.perf_counter()
    try:
        SUITES[name](cfg, rep)
    except Exception as e:
        # setup work shared by several cases broke; report it instead of crashing
        chk = rep.check("suite completed")
        chk.exhausted = isinstance(e, PrecisionExhausted)
        chk.record(False, {"error": f"{type(e).__name__}: {e}"})
    if timing:
        rep.seconds = time.perf_counter() - t0
    return rep
