"""Exact Laurent polynomials in one variable ``q`` over the rationals.

Coefficients are ``int`` or :class:`fractions.Fraction`; an integral value is
always stored as ``int`` so that the common all-integer case stays on fast
integer arithmetic. Zero coefficients are never stored, which makes structural
equality the same thing as mathematical equality.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from qfermion._kernels import add_terms, mul_terms
from qfermion.errors import DomainError, InexactDivisionError, ParseError, ZeroBaseError

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "Q",
    "as_rational",
    "format_rational",
    "parse_rational",
    "poly_arith",
    "poly_eval_exact",
    "poly_eval_float",
    "poly_serialize",
    "poly_parse",
]


def as_rational(value) -> int | Fraction:
    """Coerce an exact number to the canonical coefficient type."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational coefficient")
    if type(value) is int:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        f = Fraction(value.numerator, value.denominator)
        return f.numerator if f.denominator == 1 else f
    if isinstance(value, int):
        return int(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value) -> str:
    """``num/den`` text with a positive denominator, e.g. ``-1/1``."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> int | Fraction:
    """Inverse of :func:`format_rational`; also accepts bare integers."""
    if not isinstance(text, str):
        raise ParseError(f"rational must be text, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return as_rational(Fraction(n, d))


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``q``.

    >>> (1 - Q) * (1 + Q)
    LaurentPoly('1 - q^2')
    """

    __slots__ = ("_exps", "_coeffs", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        exps: list[int] = []
        coeffs: list = []
        if terms:
            for e in sorted(terms):
                if type(e) is not int:
                    raise TypeError(f"exponent must be int, got {e!r}")
                c = as_rational(terms[e])
                if c:
                    exps.append(e)
                    coeffs.append(c)
        self._exps = tuple(exps)
        self._coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, exps, coeffs) -> LaurentPoly:
        # caller guarantees canonical layout
        obj = object.__new__(cls)
        obj._exps = tuple(exps)
        obj._coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> LaurentPoly:
        c = as_rational(c)
        return cls._raw((0,), (c,)) if c else ZERO

    @classmethod
    def monomial(cls, exponent: int, coeff=1) -> LaurentPoly:
        c = as_rational(coeff)
        return cls._raw((int(exponent),), (c,)) if c else ZERO

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, low: int = 0) -> LaurentPoly:
        """Dense ascending coefficients starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> dict[int, int | Fraction]:
        return dict(zip(self._exps, self._coeffs))

    def items(self):
        return zip(self._exps, self._coeffs)

    def is_zero(self) -> bool:
        return not self._exps

    def __bool__(self) -> bool:
        return bool(self._exps)

    def __len__(self) -> int:
        return len(self._exps)

    def degree(self) -> int | None:
        return self._exps[-1] if self._exps else None

    def valuation(self) -> int | None:
        return self._exps[0] if self._exps else None

    def coeff(self, exponent: int):
        for e, c in zip(self._exps, self._coeffs):
            if e == exponent:
                return c
        return 0

    # -- ring operations ------------------------------------------------
    def _coerce(self, other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        try:
            return LaurentPoly.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._exps:
            return self
        if not self._exps:
            return o
        return LaurentPoly._raw(*add_terms(self._exps, self._coeffs, o._exps, o._coeffs, 1))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o._exps:
            return self
        return LaurentPoly._raw(*add_terms(self._exps, self._coeffs, o._exps, o._coeffs, -1))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return LaurentPoly._raw(self._exps, [-c for c in self._coeffs])

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._exps or not o._exps:
            return ZERO
        if len(o._exps) == 1:
            return self._scale_shift(o._coeffs[0], o._exps[0])
        if len(self._exps) == 1:
            return o._scale_shift(self._coeffs[0], self._exps[0])
        return LaurentPoly._raw(*mul_terms(self._exps, self._coeffs, o._exps, o._coeffs))

    __rmul__ = __mul__

    def _scale_shift(self, c, k: int) -> LaurentPoly:
        if c == 1:
            coeffs = self._coeffs
        elif c == -1:
            coeffs = [-x for x in self._coeffs]
        else:
            coeffs = [as_rational(x * c) for x in self._coeffs]
        exps = self._exps if k == 0 else [e + k for e in self._exps]
        return LaurentPoly._raw(exps, coeffs)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q**k``."""
        return self._scale_shift(1, k)

    def __pow__(self, n: int):
        if type(n) is not int:
            return NotImplemented
        if n < 0:
            if len(self._exps) == 1 and abs(self._coeffs[0]) == 1:
                return LaurentPoly._raw((self._exps[0] * n,), (self._coeffs[0] ** (-n),))
            raise DomainError("negative power of a non-unit Laurent polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._exps == other._exps and self._coeffs == other._coeffs
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._exps, self._coeffs))
        return self._hash

    def exact_div(self, divisor: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / divisor``, which must be a Laurent polynomial."""
        if not divisor._exps:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._exps:
            return ZERO
        vn, vd = self._exps[0], divisor._exps[0]
        num = [0] * (self._exps[-1] - vn + 1)
        for e, c in self.items():
            num[e - vn] = c
        den = [0] * (divisor._exps[-1] - vd + 1)
        for e, c in divisor.items():
            den[e - vd] = c
        dlen = len(den)
        if dlen > len(num):
            raise InexactDivisionError(f"{self} is not divisible by {divisor}")
        lead = den[-1]
        quot = [0] * (len(num) - dlen + 1)
        for k in range(len(quot) - 1, -1, -1):
            top = num[k + dlen - 1]
            if not top:
                continue
            qk = as_rational(Fraction(top) / lead)
            quot[k] = qk
            for i, dc in enumerate(den):
                if dc:
                    num[k + i] = as_rational(num[k + i] - qk * dc)
        if any(num):
            raise InexactDivisionError(f"{self} is not divisible by {divisor}")
        return LaurentPoly.from_coeffs(quot, vn - vd)

    # -- evaluation -----------------------------------------------------
    def eval_exact(self, q0) -> int | Fraction:
        q0 = as_rational(q0)
        if not self._exps:
            return 0
        low = self._exps[0]
        if q0 == 0:
            if low < 0:
                raise ZeroBaseError("negative exponent evaluated at q = 0")
            return self.coeff(0)
        qf = Fraction(q0)
        a, b = qf.numerator, qf.denominator
        # clear coefficient denominators, then integer Horner in a/b
        scale = 1
        for c in self._coeffs:
            if type(c) is not int:
                scale = scale * c.denominator // math.gcd(scale, c.denominator)
        ints = {e - low: int(c * scale) for e, c in self.items()}
        top = self._exps[-1] - low
        acc = 0
        bpow = 1
        for k in range(top, -1, -1):
            acc = acc * a + ints.get(k, 0) * bpow
            bpow *= b
        value = Fraction(acc, b**top * scale)
        if low:
            value *= qf**low
        return as_rational(value)

    def eval_float(self, q0: float) -> float:
        q0 = float(q0)
        if not q0 > 0:
            raise DomainError(f"float evaluation needs q > 0, got {q0}")
        total = 0.0
        for e, c in zip(self._exps, self._coeffs):
            total += float(c) * q0**e
        return total

    # -- text forms -----------------------------------------------------
    def to_terms(self) -> list:
        return [[e, format_rational(c)] for e, c in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_terms(), separators=(",", ":"))

    @classmethod
    def from_terms(cls, data) -> LaurentPoly:
        if not isinstance(data, list):
            raise ParseError("term list must be a JSON array")
        terms = {}
        last = None
        for item in data:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or type(item[0]) is not int
                or not isinstance(item[1], str)
            ):
                raise ParseError(f"malformed term {item!r}")
            e = item[0]
            if last is not None and e <= last:
                raise ParseError("exponents must be strictly ascending")
            c = parse_rational(item[1])
            if c == 0:
                raise ParseError("zero coefficient in canonical term list")
            terms[e] = c
            last = e
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> LaurentPoly:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
        return cls.from_terms(data)

    def __str__(self):
        if not self._exps:
            return "0"
        parts = []
        for e, c in self.items():
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


ZERO = LaurentPoly._raw((), ())
ONE = LaurentPoly._raw((0,), (1,))
Q = LaurentPoly._raw((1,), (1,))


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown op {op!r}")


def poly_eval_exact(p: LaurentPoly, q0) -> int | Fraction:
    return p.eval_exact(q0)


def poly_eval_float(p: LaurentPoly, q0: float) -> float:
    return p.eval_float(q0)


def poly_serialize(p: LaurentPoly) -> str:
    return p.to_json()


def poly_parse(text: str) -> LaurentPoly:
    return LaurentPoly.from_json(text)
