"""Truncated Fock-space matrices for the deformed oscillators.

The lowering operator carries ``sqrt([n])`` on its superdiagonal and the
raising operator is its transpose. Truncating the tower at ``dim`` corrupts
the trailing basis states, so every residual is measured on a leading block
whose size excludes a band as wide as the operator word.

Residuals are reported relative to ``max(1, largest term magnitude)`` so that
the same tolerance is meaningful when q-bosonic numbers grow like ``q**n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qfermion.errors import DomainError, UnsupportedRegimeError
from qfermion.qnumbers import QKind, falling_fact, qnum, rising_fact
from qfermion.triangles import Triangle, TriangleKind

__all__ = [
    "FockRep",
    "build_rep",
    "algebra_residual",
    "reorder_residual",
    "ordering_residual",
    "word_diagonal",
    "exact_word_diagonal",
    "report_entry",
    "TOLERANCES",
]

TOLERANCES = {"fock-algebra": 1e-12, "fock-reorder": 1e-10, "fock-normal": 1e-9, "fock-antinormal": 1e-9}


@dataclass(frozen=True, eq=False)
class FockRep:
    kind: QKind
    q: float
    dim: int
    lowering: np.ndarray
    raising: np.ndarray
    number_diag: np.ndarray

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=self.lowering.dtype)

    def qvalue(self, n: int) -> float:
        return qnum(self.kind, n).eval_float(self.q)


def build_rep(kind, q: float, dim: int, complex_amplitudes: bool = False) -> FockRep:
    """Ladder matrices on ``|0>..|dim-1>``.

    Fermions with ``q > 1`` have negative even q-numbers; they are only
    accepted with ``complex_amplitudes=True``, in which case the amplitudes are
    complex square roots and the raising matrix is the plain transpose.
    """
    kind = QKind(kind)
    q = float(q)
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    if type(dim) is not int or dim < 3:
        raise DomainError(f"dim must be an integer >= 3, got {dim!r}")
    values = np.array([qnum(kind, n).eval_float(q) for n in range(1, dim)])
    if np.any(values < 0):
        if not complex_amplitudes:
            raise UnsupportedRegimeError(
                f"{kind.value} q-numbers are negative at q={q}; pass complex_amplitudes=True"
            )
        amps = np.sqrt(values.astype(complex))
    else:
        amps = np.sqrt(values)
    lowering = np.diag(amps, k=1)
    raising = lowering.T.copy()
    for m in (lowering, raising):
        m.setflags(write=False)
    number = np.arange(dim)
    number.setflags(write=False)
    return FockRep(kind, q, dim, lowering, raising, number)


def _mpow(m: np.ndarray, k: int) -> np.ndarray:
    return np.linalg.matrix_power(m, k)


def _scaled(diff: np.ndarray, terms, block: int) -> float:
    b = slice(0, block)
    num = float(np.max(np.abs(diff[b, b]))) if block > 0 else 0.0
    scale = 1.0
    for t in terms:
        scale = max(scale, float(np.max(np.abs(t[b, b]))))
    return num / scale


def _block(rep: FockRep, cut: int, block: int | None) -> int:
    size = rep.dim - cut
    if block is not None:
        if block > size:
            raise DomainError(f"block {block} exceeds the uncorrupted size {size}")
        size = block
    return size


def algebra_residual(rep: FockRep, block: int | None = None, full: bool = False) -> float:
    """Defect of ``LR + qRL = 1`` (fermion) or ``LR - qRL = 1`` (boson).

    With ``full=True`` the whole matrix is used, exposing the truncation edge.
    """
    L, R = rep.lowering, rep.raising
    sign = 1.0 if rep.kind is QKind.FERMION else -1.0
    lr = L @ R
    rl = rep.q * (R @ L)
    diff = lr + sign * rl - rep.identity
    size = rep.dim if full else _block(rep, 1, block)
    return _scaled(diff, (lr, rl), size)


def reorder_residual(rep: FockRep, s: int, form: str | None = None, block: int | None = None) -> float:
    """Defect of a single commutation rule of length ``s``.

    ``form="lowering"``: ``L^s R = [s] L^(s-1) + c q^s R L^s``
    ``form="raising"``:  ``R^s L = c q^-s L R^s - c q^-s [s] R^(s-1)``

    with ``c = (-1)^s`` for fermions and ``1`` for bosons. The default form is
    ``lowering`` for fermions and ``raising`` for bosons.
    """
    if type(s) is not int or not 1 <= s <= rep.dim - 2:
        raise DomainError(f"s must lie in 1..{rep.dim - 2}, got {s!r}")
    if form is None:
        form = "lowering" if rep.kind is QKind.FERMION else "raising"
    L, R = rep.lowering, rep.raising
    c = (-1.0) ** s if rep.kind is QKind.FERMION else 1.0
    qs = rep.qvalue(s)
    if form == "lowering":
        lhs = _mpow(L, s) @ R
        t1 = qs * _mpow(L, s - 1)
        t2 = c * rep.q**s * (R @ _mpow(L, s))
    elif form == "raising":
        lhs = _mpow(R, s) @ L
        t1 = c * rep.q ** (-s) * (L @ _mpow(R, s))
        t2 = -c * rep.q ** (-s) * qs * _mpow(R, s - 1)
    else:
        raise DomainError(f"unknown form {form!r}")
    return _scaled(lhs - t1 - t2, (lhs, t1, t2), _block(rep, s + 1, block))


_EXPECTED = {
    (QKind.FERMION, "normal"): TriangleKind.STIRLING2F,
    (QKind.FERMION, "antinormal"): TriangleKind.ANTINORMAL_FERMION,
    (QKind.BOSON, "antinormal"): TriangleKind.ANTINORMAL_BOSON,
}


def ordering_residual(rep: FockRep, r: int, mode: str, triangle: Triangle, block: int | None = None) -> float:
    """Defect of ``X^r = sum_s T^r_s W_s`` on the leading ``dim - r - 1`` block.

    ``mode="normal"``: ``X = RL``, ``W_s = R^s L^s``;
    ``mode="antinormal"``: ``X = LR``, ``W_s = L^s R^s``.
    """
    want = _EXPECTED.get((rep.kind, mode))
    if want is None or triangle.kind is not want:
        raise DomainError(f"triangle {triangle.kind.value!r} does not match ({rep.kind.value}, {mode})")
    if type(r) is not int or not 1 <= r <= len(triangle):
        raise DomainError(f"r must lie in 1..{len(triangle)}, got {r!r}")
    if rep.dim <= 2 * r:
        raise DomainError(f"dim must exceed 2r = {2 * r}")
    L, R = rep.lowering, rep.raising
    if mode == "normal":
        x = R @ L
        words = [_mpow(R, s) @ _mpow(L, s) for s in range(1, r + 1)]
    else:
        x = L @ R
        words = [_mpow(L, s) @ _mpow(R, s) for s in range(1, r + 1)]
    lhs = _mpow(x, r)
    terms = [triangle.entry(r, s).eval_float(rep.q) * w for s, w in zip(range(1, r + 1), words)]
    rhs = sum(terms)
    return _scaled(lhs - rhs, [lhs, *terms], _block(rep, r + 1, block))


def word_diagonal(rep: FockRep, s: int, mode: str) -> np.ndarray:
    """Diagonal of ``R^s L^s`` (normal) or ``L^s R^s`` (antinormal) on uncorrupted states."""
    L, R = rep.lowering, rep.raising
    if mode == "normal":
        w = _mpow(R, s) @ _mpow(L, s)
    else:
        w = _mpow(L, s) @ _mpow(R, s)
    return np.real_if_close(np.diag(w)[: rep.dim - s])


def exact_word_diagonal(rep: FockRep, s: int, mode: str) -> np.ndarray:
    """Falling (normal) or rising (antinormal) factorials evaluated at ``rep.q``."""
    out = []
    for n in range(rep.dim - s):
        if mode == "normal":
            p = falling_fact(rep.kind, n, s) if s <= n else None
            out.append(0.0 if p is None else p.eval_float(rep.q))
        else:
            out.append(rising_fact(rep.kind, n, s).eval_float(rep.q))
    return np.array(out)


def report_entry(identity: str, rep: FockRep, r_or_s: int, residual: float, tolerance: float | None = None) -> dict:
    tol = TOLERANCES[identity] if tolerance is None else tolerance
    return {
        "identity": identity,
        "kind": rep.kind.value,
        "q": rep.q,
        "dim": rep.dim,
        "r_or_s": r_or_s,
        "residual": residual,
        "tolerance": tol,
        "pass": bool(residual < tol),
    }
