"""Carlitz polynomials, the Carlitz exponential and F_q-linear ladder operators over F_q((x))."""

from carlitzosc.algebra import GF, AbsValue, Laurent, Poly, RatFunc
from carlitzosc.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["GF", "AbsValue", "BACKEND", "Laurent", "Poly", "RatFunc", "__version__"]
