import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from carlitzosc import _pykernels, kernels
from carlitzosc._kron import kron_mul, mul_codes
from carlitzosc.algebra import GF

try:
    from carlitzosc import _ckernels
except ImportError:  # extension not built in this environment
    _ckernels = None

FIELDS = [GF(2), GF(3), GF(2, 2), GF(5), GF(3, 2)]
BACKENDS = [_pykernels] + ([_ckernels] if _ckernels else [])


def rand_poly(F, n, rng):
    c = [rng.randrange(F.q) for _ in range(n)]
    if c:
        c[-1] = rng.randrange(1, F.q)
    return c


def schoolbook(a, b, F):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(u, v))
    while out and out[-1] == 0:
        out.pop()
    return out


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_backend_mul_and_divmod(impl, F):
    rng = random.Random(f"{F!r}")
    for _ in range(30):
        a = rand_poly(F, rng.randint(0, 30), rng)
        b = rand_poly(F, rng.randint(1, 12), rng)
        assert impl.poly_mul(a, b, F) == schoolbook(a, b, F)
        quo, rem = impl.poly_divmod(a, b, F)
        assert len(rem) < len(b)
        back = schoolbook(quo, b, F)
        n = max(len(back), len(rem))
        back = back + [0] * (n - len(back))
        rr = rem + [0] * (n - len(rem))
        total = [F.add(x, y) for x, y in zip(back, rr)]
        while total and total[-1] == 0:
            total.pop()
        assert total == a


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_backends_agree(F):
    rng = random.Random(7)
    for _ in range(40):
        a = rand_poly(F, rng.randint(0, 60), rng)
        b = rand_poly(F, rng.randint(1, 40), rng)
        assert _ckernels.poly_mul(a, b, F) == _pykernels.poly_mul(a, b, F)
        assert _ckernels.poly_divmod(a, b, F) == _pykernels.poly_divmod(a, b, F)
        assert _ckernels.poly_gcd(a, b, F) == _pykernels.poly_gcd(a, b, F)
        c = rng.randrange(F.q)
        assert _ckernels.poly_scale(a, c, F) == _pykernels.poly_scale(a, c, F)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=60), st.lists(st.integers(0, 2), min_size=1, max_size=60))
def test_kronecker_matches_schoolbook_q3(a, b):
    F = GF(3)
    out = mul_codes(np.array(a), np.array(b), F).tolist()
    while out and out[-1] == 0:
        out.pop()
    while a and a[-1] == 0:
        a = a[:-1]
    while b and b[-1] == 0:
        b = b[:-1]
    assert out == schoolbook(a, b, F)


@pytest.mark.parametrize("F", [GF(2, 2), GF(3, 2), GF(2, 3)], ids=repr)
def test_kronecker_extension_fields(F):
    rng = random.Random(3)
    for _ in range(10):
        a, b = rand_poly(F, 70, rng), rand_poly(F, 55, rng)
        out = mul_codes(np.array(a), np.array(b), F).tolist()
        assert out == schoolbook(a, b, F)


def test_kronecker_bivariate():
    rng = np.random.default_rng(1)
    a = rng.integers(0, 5, size=(4, 6))
    b = rng.integers(0, 5, size=(3, 7))
    ref = np.zeros((6, 12), dtype=np.int64)
    for i in range(4):
        for j in range(6):
            ref[i : i + 3, j : j + 7] += a[i, j] * b
    assert (kron_mul(a, b, 5) == ref % 5).all()


@pytest.mark.parametrize("backend", ["python"] + (["cython"] if _ckernels else []))
def test_dispatch_thresholds(backend):
    """Products and divisions past the thresholds (Kronecker, Newton) agree with schoolbook."""
    F = GF(2, 2)
    old = kernels.BACKEND
    kernels.use_backend(backend)
    try:
        rng = random.Random(11)
        a = rand_poly(F, 2 * kernels.NEWTON_DIV_MIN + 5, rng)
        b = rand_poly(F, kernels.NEWTON_DIV_MIN + 3, rng)
        assert kernels.mul(a, b, F) == schoolbook(a, b, F)
        big = kernels.mul(a, b, F)
        big[0] = F.add(big[0], 1)
        quo, rem = kernels.divmod_(big, b, F)
        assert quo == a and rem == [1]
    finally:
        kernels.use_backend(old)


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_pure_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CARLITZOSC_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import carlitzosc; print(carlitzosc.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
