"""Floating evaluation of the q-fermionic exponential and Dobinski series.

For ``q > 1`` the magnitudes ``|[n]_f|`` grow like ``q**n / (1+q)`` and both
series converge super-geometrically. For ``0 < q < 1`` the q-numbers tend to
``1/(1+q)``, the factorials shrink geometrically and at ``x = 1`` the terms
grow without bound. At ``q = 1`` every even q-number vanishes and the series
are undefined. Evaluation is therefore refused outside ``q > 1`` for the Bell
ratio, and the exponential reports the regime it ran in.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from qfermion.errors import DomainError, RegimeError, SingularSeriesError

__all__ = ["SeriesResult", "classify_regime", "qexp_f", "bell_dobinski"]

# a term is accepted as the last one only when the next ratio is at most this,
# which bounds the neglected tail by the term itself
_TAIL_RATIO = 0.5


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    converged: bool
    regime: str

    def to_dict(self) -> dict:
        return asdict(self)


def _fnum(n: int, q: float) -> float:
    # [n]_f = (1 - (-q)^n) / (1 + q), as a float
    return (1.0 - (-q) ** n) / (1.0 + q)


def _check(q: float, tol: float, max_terms: int) -> None:
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if type(max_terms) is not int or max_terms < 2:
        raise DomainError(f"max_terms must be an integer >= 2, got {max_terms!r}")


def classify_regime(x: float, q: float) -> str:
    """Ratio-test regime of ``Σ x^n / [n]_f!``."""
    if q == 1.0:
        return "boundary"
    if q > 1.0 or x == 0.0:
        return "convergent"
    limit = abs(x) * (1.0 + q)
    if limit > 1.0:
        return "divergent"
    if limit < 1.0:
        return "convergent"
    return "boundary"


def qexp_f(x: float, q: float, tol: float = 1e-15, max_terms: int = 1000) -> SeriesResult:
    """Partial sums of ``e_q^(f)(x) = Σ_{n>=0} x^n / [n]_f!``."""
    x, q = float(x), float(q)
    _check(q, tol, max_terms)
    if q == 1.0:
        raise SingularSeriesError("[n]_f! vanishes for n >= 2 at q = 1")
    regime = classify_regime(x, q)
    total = 1.0
    term = 1.0
    if x == 0.0:
        return SeriesResult(1.0, 1, True, regime)
    for n in range(1, max_terms):
        term = term * x / _fnum(n, q)
        total += term
        if not math.isfinite(total):
            return SeriesResult(total, n + 1, False, regime)
        if regime == "convergent" and abs(term) <= tol * abs(total):
            if abs(x / _fnum(n + 1, q)) <= _TAIL_RATIO:
                return SeriesResult(total, n + 1, True, regime)
    return SeriesResult(total, max_terms, False, regime)


def bell_dobinski(r: int, q: float, tol: float = 1e-15, max_terms: int = 1000) -> SeriesResult:
    """``B_r = Σ_{n>=1} [n]_f^r / [n]_f!  /  Σ_{n>=0} 1 / [n]_f!`` for ``q > 1``.

    Both sums are truncated at the same index.
    """
    q = float(q)
    if type(r) is not int or r < 1:
        raise DomainError(f"r must be a positive integer, got {r!r}")
    _check(q, tol, max_terms)
    if q == 1.0:
        raise SingularSeriesError("Dobinski series undefined at q = 1; use the exact Bell numbers")
    if q < 1.0:
        raise RegimeError(f"Dobinski series diverges for q = {q} < 1", "divergent")
    fact = 1.0
    num = 0.0
    den = 1.0
    prev_num_term = None
    for n in range(1, max_terms):
        qn = _fnum(n, q)
        fact *= qn
        num_term = qn**r / fact
        den_term = 1.0 / fact
        num += num_term
        den += den_term
        if not (math.isfinite(num) and math.isfinite(den)):
            return SeriesResult(num / den, n + 1, False, "convergent")
        small = abs(num_term) <= tol * abs(num) and abs(den_term) <= tol * abs(den)
        shrinking = (
            prev_num_term is not None
            and abs(num_term) <= _TAIL_RATIO * abs(prev_num_term)
            and abs(1.0 / _fnum(n + 1, q)) <= _TAIL_RATIO
        )
        if small and shrinking:
            return SeriesResult(num / den, n + 1, True, "convergent")
        prev_num_term = num_term
    return SeriesResult(num / den, max_terms, False, "convergent")
