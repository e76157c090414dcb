"""Independent reference arithmetic over F_p (p prime), sharing no code with the package.

Polynomials are coefficient lists, constant term first.  Everything is the
plainest possible schoolbook code; speed is irrelevant here.
"""

from itertools import product


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def neg(a, p):
    return trim([(-c) % p for c in a])


def sub(a, b, p):
    return add(a, neg(b, p), p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = (out[i + j] + u * v) % p
    return trim(out)


def power(a, n, p):
    out = [1]
    for _ in range(n):
        out = mul(out, a, p)
    return out


def divmod_(a, b, p):
    a, b = trim(a), trim(b)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] * inv % p
        q[k] = c
        for i, v in enumerate(b):
            r[i + k] = (r[i + k] - c * v) % p
        r = trim(r)
    return trim(q), r


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def monomial(k):
    return [0] * k + [1]


def bracket(i, p):
    return sub(monomial(p**i), [0, 1], p)


def D(i, p):
    """D_i = prod_{k<i} (x^(q^i) - x^(q^k)), straight from the product."""
    out = [1]
    for k in range(i):
        out = mul(out, sub(monomial(p**i), monomial(p**k), p), p)
    return out


def L(i, p):
    out = [1]
    for k in range(1, i + 1):
        out = mul(out, bracket(k, p), p)
    return out


def all_polys(deg, p):
    """All polynomials of degree < deg."""
    return [trim(c) for c in product(range(p), repeat=deg)]


def e_product(i, p):
    """prod_{deg m < i} (t - m) as a dict {t-degree: polynomial in x}."""
    poly = {0: [1]}
    for m in all_polys(i, p):
        new = {}
        for k, c in poly.items():
            new[k + 1] = add(new.get(k + 1, []), c, p)
            new[k] = add(new.get(k, []), neg(mul(c, m, p), p), p)
        poly = {k: c for k, c in new.items() if c}
    return poly


def valuation(a):
    for k, c in enumerate(a):
        if c:
            return k
    return None


def series_inverse(b, n, p):
    """First n coefficients of 1/b, b[0] != 0, by the defining recursion."""
    inv0 = pow(b[0], p - 2, p)
    out = []
    for k in range(n):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(b) - 1) + 1):
            s = (s - b[j] * out[k - j]) % p
        out.append(s * inv0 % p)
    return out


def series_div(num, den, prec, p):
    """num/den as (valuation, coefficients) modulo x^prec; den need not be a unit."""
    vd = valuation(den)
    unit = den[vd:]
    vn = valuation(num) or 0
    m = prec - vn + vd
    if m <= 0:
        return prec, []
    q = mul(num[vn:], series_inverse(unit, m, p), p)[:m]
    return vn - vd, q


def carlitz_exp(z, prec, p):
    """sum_j z^(q^j)/D_j modulo x^prec for a polynomial z with z(0) = 0, as a dense list."""
    out = [0] * prec
    j = 0
    while True:
        zj = power(z, p**j, p)
        if valuation(zj) - valuation(D(j, p)) >= prec and j > 0:
            break
        v, c = series_div(zj, D(j, p), prec, p)
        for k, a in enumerate(c):
            if 0 <= v + k < prec:
                out[v + k] = (out[v + k] + a) % p
        j += 1
    return out
