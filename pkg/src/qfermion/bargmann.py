"""Bargmann-space calculus on polynomials of the quasi-Grassmann variable ψ.

A :class:`PsiSeries` stores ``φ(ψ) = Σ c_n ψ^n`` with exact coefficients
``c_n`` in ``Q[q, 1/q]``. The creation operator acts as multiplication by ψ
and the annihilation operator as the fermionic q-derivative
``(φ(ψ) - φ(-qψ)) / (ψ(1+q))``.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from qfermion.errors import DomainError, InexactDivisionError
from qfermion.laurent import ONE, Q, ZERO, LaurentPoly
from qfermion.qnumbers import QKind, qnum
from qfermion.triangles import Report, TriangleKind, build_triangle

__all__ = [
    "PsiSeries",
    "psi_multiply",
    "q_derivative",
    "q_derivative_quotient",
    "verify_bargmann_ordering",
]

_ONE_PLUS_Q = ONE + Q


class PsiSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, LaurentPoly) else LaurentPoly.const(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[LaurentPoly, ...] = tuple(cs)

    @classmethod
    def monomial(cls, n: int, coeff: LaurentPoly = ONE) -> PsiSeries:
        return cls([ZERO] * n + [coeff])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if not isinstance(other, PsiSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: PsiSeries) -> PsiSeries:
        size = max(len(self.coeffs), len(other.coeffs))
        return PsiSeries(self[n] + other[n] for n in range(size))

    def __sub__(self, other: PsiSeries) -> PsiSeries:
        size = max(len(self.coeffs), len(other.coeffs))
        return PsiSeries(self[n] - other[n] for n in range(size))

    def scale(self, c: LaurentPoly) -> PsiSeries:
        return PsiSeries(c * x for x in self.coeffs)

    def __repr__(self):
        return f"PsiSeries({[str(c) for c in self.coeffs]})"

    def to_json(self) -> str:
        return json.dumps([c.to_terms() for c in self.coeffs], separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> PsiSeries:
        data = json.loads(text)
        if not isinstance(data, list):
            raise DomainError("PsiSeries JSON must be an array")
        return cls(LaurentPoly.from_terms(item) for item in data)


def psi_multiply(phi: PsiSeries) -> PsiSeries:
    if not phi.coeffs:
        return phi
    return PsiSeries((ZERO, *phi.coeffs))


def q_derivative(phi: PsiSeries) -> PsiSeries:
    """Coefficient rule ``ψ^n -> [n]_f ψ^(n-1)``."""
    return PsiSeries(qnum(QKind.FERMION, n) * phi.coeffs[n] for n in range(1, len(phi.coeffs)))


def q_derivative_quotient(phi: PsiSeries) -> PsiSeries:
    """Difference quotient ``(φ(ψ) - φ(-qψ)) / (ψ(1+q))`` evaluated exactly."""
    out = []
    for n in range(1, len(phi.coeffs)):
        # coefficient of ψ^n in φ(ψ) - φ(-qψ) is c_n (1 - (-q)^n)
        factor = ONE - LaurentPoly.monomial(n, -1 if n % 2 else 1)
        try:
            out.append((phi.coeffs[n] * factor).exact_div(_ONE_PLUS_Q))
        except InexactDivisionError as exc:  # pragma: no cover
            raise InexactDivisionError(f"q-derivative quotient at degree {n}: {exc}") from None
    return PsiSeries(out)


def _apply(word: Sequence[str], phi: PsiSeries) -> PsiSeries:
    # rightmost operator acts first
    for op in reversed(word):
        phi = psi_multiply(phi) if op == "M" else q_derivative(phi)
    return phi


def verify_bargmann_ordering(mode: str, rmax: int, nmax: int) -> Report:
    """Exact check of the operator expansions on every monomial ``ψ^n``, ``n <= nmax``.

    ``normal``:     ``(ψ D)^r = Σ_s F^r_s ψ^s D^s``
    ``antinormal``: ``(D ψ)^r = Σ_s B^r_s D^s ψ^s``
    """
    if mode not in ("normal", "antinormal"):
        raise DomainError(f"unknown mode {mode!r}")
    if rmax < 1 or nmax < 2 * rmax:
        raise DomainError("need rmax >= 1 and nmax >= 2*rmax")
    tkind = TriangleKind.STIRLING2F if mode == "normal" else TriangleKind.ANTINORMAL_FERMION
    tri = build_triangle(tkind, rmax)
    rep = Report(f"bargmann-{mode}", {"rmax": rmax, "nmax": nmax})
    unit = ("M", "D") if mode == "normal" else ("D", "M")
    for n in range(nmax + 1):
        phi = PsiSeries.monomial(n)
        lhs = phi
        for r in range(1, rmax + 1):
            lhs = _apply(unit, lhs)
            rhs = PsiSeries()
            for s in range(1, r + 1):
                word = ["M"] * s + ["D"] * s if mode == "normal" else ["D"] * s + ["M"] * s
                rhs = rhs + _apply(word, phi).scale(tri.entry(r, s))
            rep.checked += 1
            if lhs != rhs:
                rep.failures.append(
                    {
                        "r": r,
                        "n": n,
                        "lhs": json.loads(lhs.to_json()),
                        "rhs": json.loads(rhs.to_json()),
                    }
                )
    return rep
