"""q-product densities and finite-interval moments of the q-stochastic point process.

The degree-``m`` q-product density is ``[n]!/[n-m]!`` times a product of the
normalized base density, so an ``s``-fold integral over a subinterval of
mass ``p`` is exactly ``[n]!/[n-s]! * p**s``. The ``r``-th moment of the
q-number of particles in that subinterval is

    Σ_s F^r_s [n]!/[n-s]! p^s

with ``F`` the second-kind q-fermionic Stirling triangle; at ``p = 1`` this is
``[n]_f^r``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

from qfermion.errors import DomainError, QFermionError
from qfermion.qnumbers import QKind, falling_fact, qnum
from qfermion.triangles import TriangleKind, build_triangle

__all__ = [
    "QuadratureError",
    "BaseDensity",
    "MomentQuery",
    "adaptive_simpson",
    "interval_mass",
    "pair_mass",
    "joint_density_coefficient",
    "moment_terms",
    "finite_interval_moment",
    "interval_for_mass",
    "infinitesimal_consistency",
]


class QuadratureError(QFermionError, ArithmeticError):
    """Adaptive quadrature hit its subdivision limit before meeting tolerance."""


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_depth: int = 50) -> float:
    """Adaptive Simpson with Richardson correction, evaluated left to right."""
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # explicit stack, left subinterval processed first
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    while stack:
        lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - s
        if abs(delta) <= 15.0 * eps and depth >= 2:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            raise QuadratureError(f"no convergence on [{lo}, {hi}] after {max_depth} bisections")
        else:
            stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
    return total


@dataclass(frozen=True)
class BaseDensity:
    """Normalized one-particle density on ``[lo, hi]``.

    Use the :meth:`uniform`, :meth:`triangular` and :meth:`tabulated`
    constructors; ``tabulated`` interpolates linearly between sorted points.
    """

    kind: str
    support: tuple[float, float]
    params: tuple = field(default=())

    @classmethod
    def uniform(cls, lo: float, hi: float) -> BaseDensity:
        lo, hi = float(lo), float(hi)
        if not lo < hi:
            raise DomainError("uniform density needs lo < hi")
        return cls("uniform", (lo, hi))

    @classmethod
    def triangular(cls, lo: float, hi: float, peak: float | None = None) -> BaseDensity:
        lo, hi = float(lo), float(hi)
        peak = 0.5 * (lo + hi) if peak is None else float(peak)
        if not (lo < hi and lo <= peak <= hi):
            raise DomainError("triangular density needs lo <= peak <= hi and lo < hi")
        return cls("triangular", (lo, hi), (peak,))

    @classmethod
    def tabulated(cls, points: Sequence[tuple[float, float]], normalize: bool = False) -> BaseDensity:
        pts = sorted((float(e), float(v)) for e, v in points)
        if len(pts) < 2:
            raise DomainError("tabulated density needs at least two points")
        es = [e for e, _ in pts]
        if any(b <= a for a, b in zip(es, es[1:])):
            raise DomainError("tabulated abscissae must be distinct")
        if any(v < 0 for _, v in pts):
            raise DomainError("density values must be nonnegative")
        area = math.fsum(0.5 * (v0 + v1) * (e1 - e0) for (e0, v0), (e1, v1) in zip(pts, pts[1:]))
        if normalize:
            if area <= 0:
                raise DomainError("tabulated density has zero mass")
            pts = [(e, v / area) for e, v in pts]
        elif abs(area - 1.0) > 1e-9:
            raise DomainError(f"tabulated density integrates to {area}, not 1")
        return cls("tabulated", (pts[0][0], pts[-1][0]), tuple(pts))

    def __call__(self, e: float) -> float:
        lo, hi = self.support
        if e < lo or e > hi:
            return 0.0
        if self.kind == "uniform":
            return 1.0 / (hi - lo)
        if self.kind == "triangular":
            (c,) = self.params
            height = 2.0 / (hi - lo)
            if e < c:
                return height * (e - lo) / (c - lo)
            if e > c:
                return height * (hi - e) / (hi - c)
            return height
        pts = self.params
        i = bisect.bisect_right([p[0] for p in pts], e) - 1
        i = min(max(i, 0), len(pts) - 2)
        (e0, v0), (e1, v1) = pts[i], pts[i + 1]
        return v0 + (v1 - v0) * (e - e0) / (e1 - e0)

    def breakpoints(self) -> list[float]:
        lo, hi = self.support
        if self.kind == "triangular":
            return [lo, self.params[0], hi]
        if self.kind == "tabulated":
            return [p[0] for p in self.params]
        return [lo, hi]


@dataclass(frozen=True)
class MomentQuery:
    n: int
    r: int
    subinterval: tuple[float, float]
    q: object

    def __post_init__(self):
        a, b = self.subinterval
        if not a < b:
            raise DomainError("subinterval needs a < b")
        if type(self.n) is not int or self.n < 0:
            raise DomainError("n must be a non-negative integer")
        if type(self.r) is not int or self.r < 1:
            raise DomainError("r must be a positive integer")


def interval_mass(d: BaseDensity, a: float, b: float, quad_tol: float = 1e-10) -> float:
    """``∫_a^b d(E) dE`` by adaptive Simpson, split at the density's kinks."""
    lo, hi = d.support
    if not (lo <= a <= b <= hi):
        raise DomainError(f"[{a}, {b}] is not inside the support [{lo}, {hi}]")
    cuts = [a] + [x for x in d.breakpoints() if a < x < b] + [b]
    pieces = len(cuts) - 1
    return math.fsum(adaptive_simpson(d, x0, x1, quad_tol / pieces) for x0, x1 in zip(cuts, cuts[1:]))


def _evaluate(p, q):
    if isinstance(q, Rational) and not isinstance(q, bool):
        return p.eval_exact(q)
    return p.eval_float(q)


def joint_density_coefficient(n: int, m: int, q) -> int | Fraction | float:
    """``[n]_f!/[n-m]_f!`` at ``q``: the prefactor of the degree-``m`` q-product density."""
    if type(m) is not int or type(n) is not int or not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got m={m!r}, n={n!r}")
    return _evaluate(falling_fact(QKind.FERMION, n, m), q)


def q_product_density(n: int, m: int, q, d: BaseDensity) -> Callable[..., float]:
    """The degree-``m`` q-product density as a function of ``m`` energies."""
    coeff = float(joint_density_coefficient(n, m, q))

    def density(*energies: float) -> float:
        if len(energies) != m:
            raise DomainError(f"expected {m} energies")
        value = coeff
        for e in energies:
            value *= d(e)
        return value

    return density


def pair_mass(n: int, q, d: BaseDensity, a: float, b: float, quad_tol: float = 1e-9) -> float:
    """Direct 2-D quadrature of the degree-2 q-product density over ``[a, b]^2``."""
    f2 = q_product_density(n, 2, q, d)
    inner_tol = quad_tol / max(b - a, 1.0)

    def outer(e1: float) -> float:
        return adaptive_simpson(lambda e2: f2(e1, e2), a, b, inner_tol)

    cuts = [a] + [x for x in d.breakpoints() if a < x < b] + [b]
    return math.fsum(adaptive_simpson(outer, x0, x1, quad_tol) for x0, x1 in zip(cuts, cuts[1:]))


def moment_terms(n: int, r: int, q, p) -> tuple[list[dict], object]:
    """Per-``s`` pieces of the ``r``-th moment at subinterval mass ``p``.

    Each piece has ``coefficient = F^r_s(q) * [n]!/[n-s]!(q)`` and
    ``contribution = coefficient * p**s``. Exact when ``q`` and ``p`` are
    rationals, floating otherwise. Returns ``(pieces, moment)``.
    """
    if type(r) is not int or r < 1:
        raise DomainError("r must be a positive integer")
    if type(n) is not int or n < 0:
        raise DomainError("n must be a non-negative integer")
    tri = build_triangle(TriangleKind.STIRLING2F, r)
    pieces = []
    total = 0
    for s in range(1, r + 1):
        if s > n:
            coeff = 0
        else:
            coeff = _evaluate(tri.entry(r, s) * falling_fact(QKind.FERMION, n, s), q)
        contribution = coeff * p**s
        pieces.append({"s": s, "coefficient": coeff, "contribution": contribution})
        total = total + contribution
    return pieces, total


def finite_interval_moment(query: MomentQuery, d: BaseDensity, quad_tol: float = 1e-10) -> float:
    a, b = query.subinterval
    p = interval_mass(d, a, b, quad_tol)
    _, total = moment_terms(query.n, query.r, query.q, p)
    return float(total)


def interval_for_mass(d: BaseDensity, p: float, quad_tol: float = 1e-12) -> tuple[float, float]:
    """Leftmost subinterval ``[lo, x]`` whose mass is ``p`` (bisection on ``x``)."""
    lo, hi = d.support
    if not 0.0 <= p <= 1.0:
        raise DomainError("p must lie in [0, 1]")
    left, right = lo, hi
    for _ in range(200):
        mid = 0.5 * (left + right)
        if interval_mass(d, lo, mid, quad_tol) < p:
            left = mid
        else:
            right = mid
        if right - left <= 1e-15 * max(1.0, abs(hi - lo)):
            break
    return lo, right


def infinitesimal_consistency(n: int, q, d: BaseDensity, p_values: Sequence[float], rmax: int = 4) -> dict:
    """All moments collapse to ``[n]_f * p`` up to ``C * p**2``.

    Each ``p`` is realised as a subinterval of ``d`` and its mass re-measured
    by quadrature; ``C = Σ_s |F^r_s [n]!/[n-s]!|`` at ``q``.
    """
    qf = float(q)
    first = qnum(QKind.FERMION, n).eval_float(qf)
    entries = []
    for p_target in p_values:
        if p_target == 0:
            p = 0.0
        else:
            a, b = interval_for_mass(d, p_target)
            p = interval_mass(d, a, b)
        for r in range(1, rmax + 1):
            pieces, moment = moment_terms(n, r, qf, p)
            c = math.fsum(abs(x["coefficient"]) for x in pieces)
            deviation = abs(moment - first * p)
            bound = c * p * p
            entries.append(
                {
                    "p": p,
                    "r": r,
                    "moment": moment,
                    "first_order": first * p,
                    "deviation": deviation,
                    "bound": bound,
                    # rounding slack relative to the terms summed
                    "pass": deviation <= bound + 1e-14 * (c * p + abs(first * p)),
                }
            )
    return {
        "identity": "infinitesimal",
        "n": n,
        "q": qf,
        "entries": entries,
        "pass": all(e["pass"] for e in entries),
    }
