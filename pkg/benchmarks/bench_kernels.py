"""Compiled kernels vs the pure-Python fallback.

Raw kernels are timed on random operands below the Kronecker threshold, where
the backends differ; the end-to-end rows switch backend for a whole workload.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]
"""

from __future__ import annotations

import argparse
import json
import random
import timeit

from carlitzosc import carlitz, kernels
from carlitzosc import _pykernels
from carlitzosc.algebra import GF, Poly
from carlitzosc.space import CarlitzCoeffs, sampled_norm

try:
    from carlitzosc import _ckernels
except ImportError:
    _ckernels = None


def rand_codes(F, n, rng):
    c = [rng.randrange(F.q) for _ in range(n - 1)]
    return c + [rng.randrange(1, F.q)]


def kernel_rows(repeat):
    rng = random.Random(0)
    rows = []
    for F in (GF(2), GF(3), GF(2, 2)):
        for n in (16, 64, 256):
            a, b = rand_codes(F, n, rng), rand_codes(F, n, rng)
            big = rand_codes(F, 2 * n, rng)
            jobs = {
                "mul": lambda m, a=a, b=b, F=F: m.poly_mul(a, b, F),
                "divmod": lambda m, big=big, b=b, F=F: m.poly_divmod(big, b, F),
                "gcd": lambda m, a=a, b=b, F=F: m.poly_gcd(a, b, F),
            }
            for op, fn in jobs.items():
                number = max(1, 20000 // (n * n) * 10)
                t_py = min(timeit.repeat(lambda: fn(_pykernels), number=number, repeat=repeat)) / number
                row = {"q": F.q, "op": op, "n": n, "python_us": t_py * 1e6}
                if _ckernels is not None:
                    t_c = min(timeit.repeat(lambda: fn(_ckernels), number=number, repeat=repeat)) / number
                    row["cython_us"] = t_c * 1e6
                    row["speedup"] = t_py / t_c
                rows.append(row)
    return rows


def workload_factorials_and_oracle():
    for F, depth in ((GF(2), 9), (GF(3), 6), (GF(2, 2), 4)):
        cache = carlitz.factorials(F, depth)
        for i in range(depth + 1):
            assert carlitz.e_product_oracle(F, i) == carlitz.e_poly(cache, i)


def workload_sampled_norm():
    F = GF(3)
    cache = carlitz.factorials(F, 6)
    c = CarlitzCoeffs(F, [Poly(F, [1, 2, 0, 1])] * 5)
    sampled_norm(cache, c, 6, "direct")


WORKLOADS = {"e_i product vs sum": workload_factorials_and_oracle, "direct sampled norm": workload_sampled_norm}


def workload_rows(repeat):
    rows = []
    backends = ["python"] + (["cython"] if _ckernels is not None else [])
    for name, fn in WORKLOADS.items():
        row = {"workload": name}
        for b in backends:
            kernels.use_backend(b)
            row[f"{b}_s"] = min(timeit.repeat(fn, number=1, repeat=repeat))
        if len(backends) == 2:
            row["speedup"] = row["python_s"] / row["cython_s"]
        rows.append(row)
    kernels.use_backend(backends[-1])
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the fallback only")
    result = {"kernels": kernel_rows(args.repeat), "workloads": workload_rows(args.repeat)}
    if args.json:
        print(json.dumps(result, indent=2))
        return
    print(f"{'q':>2} {'op':<7} {'n':>4} {'python us':>11} {'cython us':>11} {'speedup':>8}")
    for r in result["kernels"]:
        print(f"{r['q']:>2} {r['op']:<7} {r['n']:>4} {r['python_us']:>11.1f} "
              f"{r.get('cython_us', float('nan')):>11.1f} {r.get('speedup', float('nan')):>7.1f}x")
    print()
    for r in result["workloads"]:
        print(f"{r['workload']:<22} python {r['python_s']:.3f}s  cython {r.get('cython_s', float('nan')):.3f}s"
              f"  {r.get('speedup', float('nan')):.1f}x")


if __name__ == "__main__":
    main()
