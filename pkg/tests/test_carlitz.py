import pytest
from hypothesis import given, strategies as st

import oracles as o
from carlitzosc import carlitz
from carlitzosc.algebra import GF, Poly, RatFunc
from carlitzosc.carlitz import TPoly
from carlitzosc.errors import BudgetExceeded
from carlitzosc.linear import LinearPoly

F2, F3, F4 = GF(2), GF(3), GF(2, 2)
C2 = carlitz.factorials(F2, 10)
C3 = carlitz.factorials(F3, 7)
C4 = carlitz.factorials(F4, 5)


def P(F, *c):
    return Poly(F, list(c))


def x(F):
    return Poly.x(F)


# -- brackets and factorials --------------------------------------------------------


def test_bracket_examples():
    assert carlitz.bracket(F2, 1) == P(F2, 0, 1, 1)
    assert carlitz.bracket(F3, 1) == P(F3, 0, 2, 0, 1)
    assert carlitz.bracket(F2, 2) == P(F2, 0, 1, 0, 0, 1)


def test_factorial_examples_q2():
    assert C2.D[0] == C2.L[0] == Poly.one(F2)
    assert C2.D[1] == C2.L[1] == P(F2, 0, 1, 1)
    # (x^4 + x)(x^2 + x)^2, expanded by the oracle
    assert list(C2.D[2].coeffs) == o.D(2, 2) == [0, 0, 0, 1, 0, 1, 1, 0, 1]
    assert list(C2.L[2].coeffs) == o.L(2, 2) == [0, 0, 1, 1, 0, 1, 1]


@pytest.mark.parametrize("cache,p", [(C2, 2), (C3, 3)], ids=["q2", "q3"])
def test_factorials_against_oracle(cache, p):
    for i in range(6):
        assert list(cache.D[i].coeffs) == o.D(i, p)
        assert list(cache.L[i].coeffs) == o.L(i, p)


@pytest.mark.parametrize("cache", [C2, C3, C4], ids=["q2", "q3", "q4"])
def test_factorial_laws(cache):
    F, q = cache.field, cache.q
    for i in range(cache.imax + 1):
        assert cache.D[i] == carlitz.closed_D(F, i)
        assert cache.L[i] == carlitz.closed_L(F, i)
        assert cache.D[i].valuation() == (q**i - 1) // (q - 1)
        assert cache.L[i].valuation() == i
        assert cache.D[i].degree() == i * q**i


def test_binomial_examples():
    for cache in (C2, C3, C4):
        for i in range(4):
            assert carlitz.carlitz_binom(cache, i, i) == Poly.one(cache.field)
        assert carlitz.carlitz_binom(cache, 1, 0) == Poly.one(cache.field)
    # D_2 / (D_1 L_1^2) = x^2 + x + 1, checked by oracle division
    assert carlitz.carlitz_binom(C2, 2, 1) == P(F2, 1, 1, 1)
    assert o.divmod_(o.D(2, 2), o.mul(o.D(1, 2), o.power(o.L(1, 2), 2, 2), 2), 2) == ([1, 1, 1], [])


def test_depth_checked():
    with pytest.raises(ValueError):
        carlitz.carlitz_binom(C4, 6, 1)


# -- Carlitz polynomials ------------------------------------------------------------


def test_e_small_cases():
    t = LinearPoly.t(F2)
    assert carlitz.e_poly(C2, 0) == t
    assert carlitz.e_poly(C2, 1) == LinearPoly(F2, [Poly.one(F2), Poly.one(F2)])
    assert carlitz.e_poly(C3, 1) == LinearPoly(F3, [P(F3, 2), Poly.one(F3)])


def test_e2_q2_against_product_oracle():
    # prod over m in {0, 1, x, x+1} of (t - m): t^4 + (x^2+x+1) t^2 + (x^2+x) t
    ref = o.e_product(2, 2)
    assert ref == {4: [1], 2: [1, 1, 1], 1: [0, 1, 1]}
    e2 = carlitz.e_poly(C2, 2)
    assert [list(c.coeffs) for c in e2.coeffs] == [[0, 1, 1], [1, 1, 1], [1]]


@pytest.mark.parametrize("cache,p,imax", [(C2, 2, 4), (C3, 3, 2)], ids=["q2", "q3"])
def test_e_against_independent_product(cache, p, imax):
    for i in range(imax + 1):
        ref = o.e_product(i, p)
        assert set(ref) == {p**j for j in range(i + 1)}
        e = carlitz.e_poly(cache, i)
        assert [list(e[j].coeffs) for j in range(i + 1)] == [ref[p**j] for j in range(i + 1)]


@pytest.mark.parametrize("cache,depth", [(C2, 10), (C3, 7), (C4, 5)], ids=["q2", "q3", "q4"])
def test_product_oracle_equals_sum_formula(cache, depth):
    for i in range(depth + 1):
        assert carlitz.e_product_oracle(cache.field, i) == carlitz.e_poly(cache, i)


def test_product_oracle_budget():
    with pytest.raises(BudgetExceeded):
        carlitz.e_product_terms(F2, 13, budget=4096)


def test_f_examples():
    assert carlitz.f_poly(C2, 0) == LinearPoly.t(F2)
    f1 = carlitz.f_poly(C2, 1)
    d1 = RatFunc(Poly.one(F2), P(F2, 0, 1, 1))
    assert f1 == LinearPoly(F2, [d1, d1])
    assert f1(x(F2)) == 1


@pytest.mark.parametrize("cache", [C2, C3, C4], ids=["q2", "q3", "q4"])
def test_e_vanishes_on_small_polys(cache):
    F = cache.field
    for i in range(1, 4):
        if F.q**i > 64:
            break
        e = carlitz.e_poly(cache, i)
        for n in range(F.q**i):
            assert e(carlitz.m_seq(F, n)).is_zero()
        assert not e(Poly.x(F) ** i).is_zero()


@pytest.mark.parametrize("cache", [C2, C3], ids=["q2", "q3"])
def test_f_integer_valued(cache):
    F = cache.field
    for i in range(4):
        for n in range(F.q**3):
            m = carlitz.m_seq(F, n)
            v = carlitz.f_poly(cache, i)(m)
            assert v == RatFunc.from_poly(carlitz.f_value(cache, i, m))
            assert v.is_poly()


# -- digits, h_j, Q_j ------------------------------------------------------------------


def test_digit_expansion():
    assert carlitz.DigitExpansion.of(5, 3).digits == (2, 1)
    assert carlitz.DigitExpansion.of(0, 2).digits == ()
    assert carlitz.DigitExpansion.of(11, 2).value(2) == 11


def test_h_examples():
    h0, _, _ = carlitz.h_poly(C2, 0)
    h1, _, _ = carlitz.h_poly(C2, 1)
    assert h0 == TPoly(F2, [Poly.one(F2)])
    assert h1 == TPoly(F2, [Poly.zero(F2), Poly.one(F2)])
    h3, G3, Gamma3 = carlitz.h_poly(C2, 3)
    inv = RatFunc(Poly.one(F2), P(F2, 0, 1, 1))
    assert h3 == TPoly(F2, [0, 0, inv, inv])  # t (t^2 + t) / (x^2 + x)
    assert Gamma3 == P(F2, 0, 1, 1) and Gamma3.valuation() == 1


@pytest.mark.parametrize("cache", [C2, C3, C4], ids=["q2", "q3", "q4"])
def test_h_at_powers_is_f(cache):
    q = cache.q
    for i in range(3):
        h, _, _ = carlitz.h_poly(cache, q**i)
        assert h == TPoly.from_linear(carlitz.f_poly(cache, i))
    for j in range(q**2):
        assert carlitz.h_poly(cache, j)[0].degree() == j


def test_m_sequence():
    assert [carlitz.m_seq(F2, j) for j in range(4)] == [Poly.zero(F2), Poly.one(F2), x(F2), x(F2) + 1]
    assert carlitz.m_seq(F3, 5) == x(F3) + 2
    for F in (F2, F3, F4):
        assert carlitz.m_seq(F, 1) == Poly.one(F)


def test_Q_examples():
    assert carlitz.Q_poly(F2, 0) == TPoly(F2, [RatFunc.one(F2)])
    assert carlitz.Q_poly(F2, 1) == TPoly(F2, [0, 1])
    inv = RatFunc(Poly.one(F2), P(F2, 0, 1, 1))
    assert carlitz.Q_poly(F2, 2) == TPoly(F2, [0, inv, inv])


@pytest.mark.parametrize("F", [F2, F3, F4], ids=repr)
def test_Q_interpolates(F):
    for j in range(12):
        Q = carlitz.Q_poly(F, j)
        for k in range(j + 1):
            assert Q(carlitz.m_seq(F, k)) == (1 if k == j else 0)


def test_expand_h_examples():
    assert carlitz.expand_h_in_Q(C2, 1) == [RatFunc.zero(F2), RatFunc.one(F2)]
    c = carlitz.expand_h_in_Q(C2, 3)
    assert c[3] == RatFunc.one(F2)  # (x^2 + x)^-1 (x + 1) x 1
    for i in range(5):
        assert carlitz.expand_h_in_Q(C2, 2**i)[-1].valuation() == 0


@pytest.mark.parametrize("cache,nmax", [(C2, 32), (C3, 27), (C4, 32)], ids=["q2", "q3", "q4"])
def test_expand_h_integrality(cache, nmax):
    F = cache.field
    for n in range(nmax):
        c = carlitz.expand_h_in_Q(cache, n)
        assert c[n].valuation() == 0
        assert all(ci.is_zero() or ci.valuation() >= 0 for ci in c)
        if n < 12:  # reassemble h_n from the Q basis
            total = TPoly(F, [])
            for i, ci in enumerate(c):
                total = total + carlitz.Q_poly(F, i).scale(ci)
            assert total == carlitz.h_poly(cache, n)[0]


def test_l_kappa_examples():
    assert carlitz.l_and_kappa(F2, 0) == (0, 0)
    assert carlitz.l_and_kappa(F2, 1) == (0, 0)
    assert carlitz.l_and_kappa(F2, 3) == (1, 1)
    assert carlitz.l_and_kappa(F3, 9) == (4, 4)
    assert carlitz.kappa_by_product(F3, 9) == 4


@given(st.integers(0, 511))
def test_kappa_equals_l_q2(n):
    l, kappa = carlitz.l_and_kappa(F2, n)
    assert l == kappa


@given(st.integers(0, 63))
def test_kappa_by_product_q3(n):
    assert carlitz.kappa_by_product(F3, n) == carlitz.l_and_kappa(F3, n)[1]


def test_alternative_enumeration():
    alt = carlitz.alternative_enumeration(F4)
    assert alt[:2] == [0, 1] and alt != carlitz.default_enumeration(F4)
    for n in range(200):
        l, kappa = carlitz.l_and_kappa(F4, n, alt)
        assert l == kappa
    with pytest.raises(ValueError):
        carlitz.Q_poly(F4, 3, [1, 0, 2, 3])
