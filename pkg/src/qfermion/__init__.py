"""Exact q-fermionic and q-bosonic ordering numbers.

Stirling, Bell, Lah and anti-normal-ordering coefficients are computed as
Laurent polynomials in ``q`` with rational coefficients and cross-checked
against truncated Fock-space matrices and a Bargmann-space operator calculus.
"""

from qfermion._kernels import BACKEND
from qfermion.laurent import ONE, Q, ZERO, LaurentPoly
from qfermion.qnumbers import QKind, falling_fact, qbinom, qfact, qnum, rising_fact
from qfermion.triangles import Triangle, TriangleKind, bell_numbers, build_triangle

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LaurentPoly",
    "ONE",
    "Q",
    "ZERO",
    "QKind",
    "qnum",
    "qfact",
    "falling_fact",
    "rising_fact",
    "qbinom",
    "Triangle",
    "TriangleKind",
    "build_triangle",
    "bell_numbers",
]
