"""q-bosonic and q-fermionic numbers, factorials and binomials.

Every quantity is a polynomial in ``q`` built from sums and products only, so
values stay exact at ``q = 1`` where the fermionic even numbers vanish.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from qfermion.errors import DomainError
from qfermion.laurent import ONE, LaurentPoly

__all__ = [
    "QKind",
    "qnum",
    "qfact",
    "falling_fact",
    "rising_fact",
    "qbinom",
    "shift_identity_check",
]


class QKind(str, enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"


def _kind(kind) -> QKind:
    try:
        return QKind(kind)
    except ValueError:
        raise DomainError(f"unknown q-number kind {kind!r}") from None


def _check_nonneg(name: str, value: int) -> None:
    if type(value) is not int or value < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {value!r}")


@lru_cache(maxsize=None)
def _qnum(kind: QKind, n: int) -> LaurentPoly:
    if kind is QKind.BOSON:
        return LaurentPoly.from_coeffs([1] * n)
    return LaurentPoly.from_coeffs([(-1) ** k for k in range(n)])


def qnum(kind, n: int) -> LaurentPoly:
    """``[n]``: ``1 + q + ... + q^(n-1)`` (boson) or ``1 - q + ... ± q^(n-1)`` (fermion)."""
    _check_nonneg("n", n)
    return _qnum(_kind(kind), n)


@lru_cache(maxsize=None)
def _qfact(kind: QKind, n: int) -> LaurentPoly:
    return ONE if n == 0 else _qfact(kind, n - 1) * _qnum(kind, n)


def qfact(kind, n: int) -> LaurentPoly:
    _check_nonneg("n", n)
    kind = _kind(kind)
    # fill the cache bottom-up so deep n never recurses far
    for k in range(0, n + 1, 64):
        _qfact(kind, k)
    return _qfact(kind, n)


def falling_fact(kind, n: int, s: int) -> LaurentPoly:
    """``[n][n-1]...[n-s+1]`` as a product."""
    _check_nonneg("n", n)
    _check_nonneg("s", s)
    if s > n:
        raise DomainError(f"falling factorial needs s <= n, got s={s}, n={n}")
    kind = _kind(kind)
    result = ONE
    for k in range(n, n - s, -1):
        result = result * _qnum(kind, k)
    return result


def rising_fact(kind, n: int, s: int) -> LaurentPoly:
    """``[n+1][n+2]...[n+s]`` as a product."""
    _check_nonneg("n", n)
    _check_nonneg("s", s)
    kind = _kind(kind)
    result = ONE
    for k in range(n + 1, n + s + 1):
        result = result * _qnum(kind, k)
    return result


def qbinom(kind, n: int, k: int) -> LaurentPoly:
    """Gaussian binomial ``[n]!/([k]![n-k]!)`` by verified exact division.

    Raises :class:`~qfermion.errors.InexactDivisionError` if the division
    leaves a remainder, which would indicate a bug rather than bad input.
    """
    _check_nonneg("n", n)
    _check_nonneg("k", k)
    if k > n:
        raise DomainError(f"q-binomial needs k <= n, got k={k}, n={n}")
    return falling_fact(kind, n, k).exact_div(qfact(kind, k))


def shift_identity_check(n: int, r: int) -> bool:
    """``[n]_f - [r]_f == (-1)^r q^r [n-r]_f``, exactly."""
    _check_nonneg("n", n)
    _check_nonneg("r", r)
    if r > n:
        raise DomainError(f"shift identity needs r <= n, got r={r}, n={n}")
    lhs = qnum(QKind.FERMION, n) - qnum(QKind.FERMION, r)
    rhs = qnum(QKind.FERMION, n - r).shift(r) * (-1) ** r
    return lhs == rhs

