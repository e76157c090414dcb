from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles as o
from carlitzosc import expseries as ex
from carlitzosc.algebra import GF, Laurent, Poly, RatFunc
from carlitzosc.errors import DomainError, PrecisionExhausted

F2, F3, F4 = GF(2), GF(3), GF(2, 2)

# e_C(z) mod x^prec from the independent summation in tests/oracles.py
EXP_FROZEN = {
    (2, (0, 0, 1), 16): [0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0],
    (3, (0, 1), 16): [0, 1, 2, 0, 2, 1, 2, 0, 2, 0, 2, 1, 2, 1, 1, 0],
    (3, (0, 0, 1, 1), 24): [0, 0, 1, 1, 0, 2, 0, 2, 2, 2, 2, 2, 2, 2, 0, 2, 2, 2, 2, 2, 0, 2, 0, 0],
}


def dense(s: Laurent, prec: int) -> list[int]:
    return [s.coeff(Fraction(k)) for k in range(prec)]


@pytest.mark.parametrize("key", list(EXP_FROZEN), ids=str)
def test_exp_frozen_values(key):
    p, z, prec = key
    F = GF(p)
    assert o.carlitz_exp(list(z), prec, p) == EXP_FROZEN[key]
    got = ex.carlitz_exp(F, Poly(F, list(z)), prec=prec)
    assert got.precision() == prec
    assert dense(got, prec) == EXP_FROZEN[key]


@given(st.lists(st.integers(0, 2), min_size=1, max_size=5))
def test_exp_against_oracle_q3(tail):
    z = [0] + tail
    if not any(z):
        return
    got = ex.carlitz_exp(F3, Poly(F3, z), prec=20)
    assert dense(got, 20) == o.carlitz_exp(z, 20, 3)


def test_exp_zero_and_leading_term():
    assert ex.carlitz_exp(F2, Poly.zero(F2), prec=10).is_zero()
    assert ex.rho(F3, Poly.zero(F3), prec=10).is_zero()
    for F, z in [(F2, Poly.x(F2) ** 3), (F3, Poly.x(F3)), (F4, Poly.x(F4) * (Poly.x(F4) + 2))]:
        assert ex.carlitz_exp(F, z, prec=30).valuation() == z.valuation()
        assert ex.rho(F, z, prec=30).valuation() == z.valuation()


def test_reverse_summation_q3():
    """Sum the terms last-to-first with exact arithmetic and compare."""
    from carlitzosc import carlitz

    z = Poly.x(F3)
    fwd = ex.carlitz_exp(F3, z, prec=8)
    cache = carlitz.factorials(F3, 8)
    acc = Laurent.zero(F3, 8)
    for j in reversed(range(8)):
        acc = acc + Laurent.from_poly(z.frob(j)).div(cache.D[j], prec=8)
    assert fwd.agree(acc) == (True, 8)


def test_domain_enforced():
    x = Poly.x(F2)
    for z in (x, x + x**2, Poly.one(F2)):
        with pytest.raises(DomainError, match=r"q\^\(-1/\(q-1\)\)"):
            ex.carlitz_exp(F2, z, prec=16)
    assert not ex.in_exp_domain(2, 1) and ex.in_exp_domain(2, 2) and ex.in_exp_domain(3, 1)
    with pytest.raises(DomainError):
        ex.carlitz_exp(F3, Poly.one(F3), prec=8)


def test_precision_exhausted_with_fixed_N():
    with pytest.raises(PrecisionExhausted):
        ex.carlitz_exp(F3, Poly.x(F3), N=1, prec=40)


def test_term_valuations():
    for q in (2, 3, 4):
        v = 2
        vals = [ex.exp_term_valuation(q, j, v) for j in range(6)]
        assert vals[0] == v and all(a < b for a, b in zip(vals, vals[1:]))
        assert ex.rho_term_valuation(q, 1, v) == q * v - 1


def test_rho_bound_example():
    # |rho(x)| = q^-1 <= max(|x|, q |x|^q): exponents 1 and 2 - 1
    r = ex.rho(F3, Poly.x(F3), prec=20)
    assert r.valuation() == 1 >= min(1, 3 * 1 - 1)


@pytest.mark.parametrize("F,prec", [(F2, 32), (F3, 27), (F4, 24)], ids=repr)
def test_composition_identity(F, prec):
    x = Poly.x(F)
    vmin = 2 if F.q == 2 else 1
    for z in (x**vmin, x**vmin + x ** (vmin + 1), x ** (vmin + 3) * (x + 1)):
        r = ex.verify_inverse(F, z, prec)
        assert r.ok and r.precision >= prec


def test_composition_q2_x_squared_to_16():
    r = ex.verify_inverse(F2, Poly.x(F2) ** 2, 16)
    assert r.ok and r.precision >= 16


@given(st.lists(st.integers(0, 1), min_size=1, max_size=6))
def test_composition_random_q2(tail):
    z = Poly(F2, [0, 0] + tail)
    if z.is_zero():
        return
    r = ex.verify_inverse(F2, z, 32)
    assert r.ok


def test_rational_argument_needs_series():
    z = RatFunc(Poly.x(F3), Poly.one(F3) + Poly.x(F3))
    with pytest.raises(DomainError):
        ex.carlitz_exp(F3, z, prec=10)
    from carlitzosc.algebra import rat_to_laurent

    s = ex.carlitz_exp(F3, rat_to_laurent(z, 10), prec=10)
    assert s.valuation() == 1


# -- w_z and the partial identity -------------------------------------------------------


@pytest.mark.parametrize("F", [F2, F3, F4], ids=repr)
def test_partial_identity(F):
    for N in range(6):
        for n in range(N + 1):
            lhs, rhs = ex.wz_partial_polys(F, N, n)
            assert lhs == rhs


def test_partial_identity_endpoints():
    lhs, _ = ex.wz_partial_polys(F2, 3, 0)
    assert lhs == ex._exp_linear(F2, 3)
    lhs, _ = ex.wz_partial_polys(F2, 3, 3)
    assert len(lhs.coeffs) == 4 and lhs[3] == 1 and all(lhs[j] == 0 for j in range(3))


def test_wz_first_coefficient_is_exp():
    z = Poly.x(F3)
    c = ex.wz_coeffs(F3, z, 4, 20)
    assert c[0].agree(ex.carlitz_exp(F3, z, prec=20))[0]
    assert all(ci.is_zero() for ci in ex.wz_coeffs(F3, Poly.zero(F3), 3, 10).coeffs)


@pytest.mark.parametrize(
    "F,zs", [(F2, ["x^2"]), (F3, ["x", "x^2", "x+x^2"])], ids=["q2", "q3"]
)
def test_wz_two_route(F, zs):
    from carlitzosc.serialize import parse_scalar

    x = Poly.x(F)
    for zt in zs:
        z = parse_scalar(zt, F).as_poly()
        for t in (Poly.one(F), x, x + 1, x**2):
            ok, at, _, _ = ex.wz_two_route(F, z, t, 8, 64)
            assert ok and at >= min(64, F.q**8 * z.valuation())


def test_coherent_two_route():
    nu = RatFunc.from_poly(Poly.x(F3))
    c0 = RatFunc.x_power(F3, -1)  # c = c0 nu^3 = x^2
    for t in (Poly.one(F3), Poly.x(F3), Poly.x(F3) + 1):
        ok, at, _, _ = ex.coherent_two_route(F3, nu, c0, t, 6, 40)
        assert ok and at >= 30
    with pytest.raises(DomainError):
        ex.coherent_two_route(F3, nu, RatFunc.x_power(F3, -2), Poly.one(F3), 6, 20)
