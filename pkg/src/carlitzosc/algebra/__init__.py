"""Exact ground arithmetic: GF(q), F_q[x], rational functions, truncated Laurent series."""

from carlitzosc.algebra.absval import AbsValue
from carlitzosc.algebra.field import GF, default_modulus, is_irreducible_mod_p
from carlitzosc.algebra.laurent import Laurent, abs_val, frobenius, qth_root, rat_to_laurent
from carlitzosc.algebra.poly import Poly
from carlitzosc.algebra.ratfunc import RatFunc

__all__ = [
    "AbsValue", "GF", "Laurent", "Poly", "RatFunc", "abs_val", "default_modulus",
    "fq_enumerate", "frobenius", "is_irreducible_mod_p", "qth_root", "rat_to_laurent",
]


def fq_enumerate(F: GF) -> list[int]:
    """a_0 = 0, a_1 = 1, a_2, ... : the fixed enumeration of F_q (codes in order)."""
    return F.elements()
