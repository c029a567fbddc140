"""Ordering-coefficient triangles and the exact identities they satisfy.

Five families are generated row by row from their recurrences:

``stirling2f``
    second-kind q-fermionic Stirling numbers (normal ordering of ``(F†F)^r``)
``stirling1f``
    first-kind q-fermionic Stirling numbers (the inverse expansion)
``lahf``
    unsigned q-fermionic Lah numbers; row ``n`` carries ``s = 0..n``
``antinormal_boson`` / ``antinormal_fermion``
    coefficients of ``(AA†)^r`` and ``(FF†)^r`` in anti-normally ordered words

The ``verify_*`` functions return a :class:`Report`; a failing ``(r, n)``
pair is recorded rather than raised.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from qfermion.errors import DomainError
from qfermion.laurent import ONE, ZERO, LaurentPoly
from qfermion.qnumbers import QKind, falling_fact, qnum, rising_fact

__all__ = [
    "TriangleKind",
    "Triangle",
    "Report",
    "build_triangle",
    "bell_numbers",
    "bell_q1_pattern",
    "bell_q1_expected",
    "verify_falling_identity",
    "verify_first_kind_identity",
    "verify_lah_identity",
    "verify_rising_identity",
]

FERMION = QKind.FERMION
BOSON = QKind.BOSON


class TriangleKind(str, enum.Enum):
    STIRLING2F = "stirling2f"
    STIRLING1F = "stirling1f"
    LAHF = "lahf"
    ANTINORMAL_BOSON = "antinormal_boson"
    ANTINORMAL_FERMION = "antinormal_fermion"


@dataclass(frozen=True)
class Triangle:
    kind: TriangleKind
    rows: tuple[tuple[LaurentPoly, ...], ...]

    def __len__(self):
        return len(self.rows)

    def row(self, r: int) -> tuple[LaurentPoly, ...]:
        """Row ``r`` (1-indexed)."""
        return self.rows[r - 1]

    def entry(self, r: int, s: int) -> LaurentPoly:
        """``T^r_s`` with the zero boundary outside the stored range."""
        row = self.rows[r - 1]
        idx = s if self.kind is TriangleKind.LAHF else s - 1
        if 0 <= idx < len(row):
            return row[idx]
        return ZERO

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "rows": [[p.to_terms() for p in row] for row in self.rows]}

    @classmethod
    def from_dict(cls, data: dict) -> Triangle:
        kind = TriangleKind(data["kind"])
        rows = tuple(tuple(LaurentPoly.from_terms(p) for p in row) for row in data["rows"])
        return cls(kind, rows)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _next_row(kind: TriangleKind, r: int, prev: tuple[LaurentPoly, ...]) -> tuple[LaurentPoly, ...]:
    """Row ``r + 1`` from row ``r``."""

    def get(s):
        # stored index for entry s of the previous row
        idx = s if kind is TriangleKind.LAHF else s - 1
        return prev[idx] if 0 <= idx < len(prev) else ZERO

    out = []
    if kind is TriangleKind.STIRLING2F:
        for s in range(1, r + 2):
            out.append(get(s - 1).shift(s - 1) * _sign(s - 1) + qnum(FERMION, s) * get(s))
    elif kind is TriangleKind.STIRLING1F:
        sg = _sign(r)
        shift_r = qnum(FERMION, r).shift(-r) * sg
        for s in range(1, r + 2):
            out.append(get(s - 1).shift(-r) * sg - shift_r * get(s))
    elif kind is TriangleKind.LAHF:
        n = r
        for s in range(0, n + 2):
            out.append(get(s - 1).shift(n + s - 1) * _sign(n + s - 1) + qnum(FERMION, s + n) * get(s))
    elif kind is TriangleKind.ANTINORMAL_BOSON:
        for s in range(1, r + 2):
            out.append(get(s - 1).shift(-(s - 1)) - (qnum(BOSON, s) * get(s)).shift(-s))
    elif kind is TriangleKind.ANTINORMAL_FERMION:
        for s in range(1, r + 2):
            out.append(get(s - 1).shift(-(s - 1)) * _sign(s - 1) - (qnum(FERMION, s) * get(s)).shift(-s) * _sign(s))
    else:  # pragma: no cover
        raise DomainError(f"unknown triangle kind {kind!r}")
    return tuple(out)


def _seed(kind: TriangleKind) -> tuple[LaurentPoly, ...]:
    if kind is TriangleKind.LAHF:
        return (ZERO, ONE)
    return (ONE,)


def build_triangle(kind, rows: int) -> Triangle:
    """Rows ``1..rows`` of the requested coefficient family."""
    try:
        kind = TriangleKind(kind)
    except ValueError:
        raise DomainError(f"unknown triangle kind {kind!r}") from None
    if type(rows) is not int or rows < 1:
        raise DomainError(f"rows must be a positive integer, got {rows!r}")
    out = [_seed(kind)]
    for r in range(1, rows):
        out.append(_next_row(kind, r, out[-1]))
    return Triangle(kind, tuple(out))


def bell_numbers(rows: int) -> list[LaurentPoly]:
    """q-fermionic Bell numbers ``B_1..B_rows`` as row sums of ``stirling2f``."""
    tri = build_triangle(TriangleKind.STIRLING2F, rows)
    result = []
    for row in tri.rows:
        total = ZERO
        for p in row:
            total = total + p
        result.append(total)
    return result


def bell_q1_pattern(rows: int) -> list[int]:
    """Bell polynomials evaluated exactly at ``q = 1``."""
    return [int(b.eval_exact(1)) for b in bell_numbers(rows)]


def bell_q1_expected(r: int) -> int:
    """Closed pattern at ``q = 1``: 1, 0, then a period-3 signed cycle."""
    if r < 1:
        raise DomainError("r must be >= 1")
    if r == 1:
        return 1
    if r == 2:
        return 0
    if r % 3 == 0:
        return _sign(r)
    if r % 3 == 1:
        return _sign(r + 1)
    return 0


@dataclass
class Report:
    identity: str
    params: dict
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, key: dict, lhs: LaurentPoly, rhs: LaurentPoly) -> None:
        self.checked += 1
        if lhs != rhs:
            self.failures.append({**key, "lhs": lhs.to_terms(), "rhs": rhs.to_terms()})

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            **self.params,
            "checked": self.checked,
            "failures": self.failures,
            "pass": self.passed,
        }


def _powers(base: LaurentPoly, top: int) -> list[LaurentPoly]:
    out = [ONE]
    for _ in range(top):
        out.append(out[-1] * base)
    return out


def verify_falling_identity(rmax: int, nmax: int) -> Report:
    """``[n]^r == sum_s F^r_s [n][n-1]...[n-s+1]`` for ``r <= rmax``, ``r <= n <= nmax``."""
    if not 1 <= rmax <= nmax:
        raise DomainError("need nmax >= rmax >= 1")
    tri = build_triangle(TriangleKind.STIRLING2F, rmax)
    rep = Report("falling", {"rmax": rmax, "nmax": nmax})
    for n in range(1, nmax + 1):
        pw = _powers(qnum(FERMION, n), min(rmax, n))
        fall = [falling_fact(FERMION, n, s) for s in range(min(rmax, n) + 1)]
        for r in range(1, min(rmax, n) + 1):
            rhs = ZERO
            for s in range(1, r + 1):
                rhs = rhs + tri.entry(r, s) * fall[s]
            rep.record({"r": r, "n": n}, pw[r], rhs)
    return rep


def verify_first_kind_identity(rmax: int, nmax: int) -> Report:
    """``[n][n-1]...[n-r+1] == sum_s S^r_s [n]^s``."""
    if not 1 <= rmax <= nmax:
        raise DomainError("need nmax >= rmax >= 1")
    tri = build_triangle(TriangleKind.STIRLING1F, rmax)
    rep = Report("first-kind", {"rmax": rmax, "nmax": nmax})
    for n in range(1, nmax + 1):
        pw = _powers(qnum(FERMION, n), rmax)
        for r in range(1, min(rmax, n) + 1):
            rhs = ZERO
            for s in range(1, r + 1):
                rhs = rhs + tri.entry(r, s) * pw[s]
            rep.record({"r": r, "n": n}, falling_fact(FERMION, n, r), rhs)
    return rep


def verify_lah_identity(nmax: int, rmax: int) -> Report:
    """``[r][r+1]...[r+n-1] == sum_{s=0..n} L^n_s [r][r-1]...[r-s+1]``.

    The right-hand factor is the falling factorial in ``r`` of length ``s``.
    """
    if not 1 <= nmax <= rmax:
        raise DomainError("need rmax >= nmax >= 1")
    tri = build_triangle(TriangleKind.LAHF, nmax)
    rep = Report("lah", {"nmax": nmax, "rmax": rmax})
    for r in range(1, rmax + 1):
        fall = [falling_fact(FERMION, r, s) for s in range(min(nmax, r) + 1)]
        for n in range(1, min(nmax, r) + 1):
            rhs = ZERO
            for s in range(0, n + 1):
                rhs = rhs + tri.entry(n, s) * fall[s]
            rep.record({"n": n, "r": r}, rising_fact(FERMION, r - 1, n), rhs)
    return rep


def verify_rising_identity(kind, rmax: int, nmax: int) -> Report:
    """``[n+1]^r == sum_s T^r_s [n+1][n+2]...[n+s]`` with ``T`` the anti-normal triangle."""
    kind = QKind(kind)
    if rmax < 1 or nmax < 0:
        raise DomainError("need rmax >= 1 and nmax >= 0")
    tkind = TriangleKind.ANTINORMAL_BOSON if kind is BOSON else TriangleKind.ANTINORMAL_FERMION
    tri = build_triangle(tkind, rmax)
    rep = Report(f"rising-{'b' if kind is BOSON else 'f'}", {"kind": kind.value, "rmax": rmax, "nmax": nmax})
    for n in range(0, nmax + 1):
        pw = _powers(qnum(kind, n + 1), rmax)
        rise = [rising_fact(kind, n, s) for s in range(rmax + 1)]
        for r in range(1, rmax + 1):
            rhs = ZERO
            for s in range(1, r + 1):
                rhs = rhs + tri.entry(r, s) * rise[s]
            rep.record({"r": r, "n": n}, pw[r], rhs)
    return rep
