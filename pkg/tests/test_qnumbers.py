from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import qnum_by_division
from qfermion.errors import DomainError
from qfermion.laurent import ONE, Q, ZERO
from qfermion.qnumbers import (
    QKind,
    falling_fact,
    qbinom,
    qfact,
    qnum,
    rising_fact,
    shift_identity_check,
)

B, F = QKind.BOSON, QKind.FERMION


def test_kind_has_two_variants():
    assert {k.value for k in QKind} == {"boson", "fermion"}


@pytest.mark.parametrize(
    "kind, n, expected",
    [(F, 0, ZERO), (F, 2, 1 - Q), (B, 3, 1 + Q + Q**2), (F, 3, 1 - Q + Q**2), (F, 4, 1 - Q + Q**2 - Q**3)],
)
def test_qnum_examples(kind, n, expected):
    assert qnum(kind, n) == expected


@pytest.mark.parametrize("kind", ["boson", "fermion"])
def test_qnum_matches_closed_quotient(kind):
    for n in range(0, 40):
        assert qnum(kind, n) == qnum_by_division(kind, n)


def test_negative_arguments_rejected():
    for call in (lambda: qnum(F, -1), lambda: qfact(B, -2), lambda: falling_fact(F, 2, 3), lambda: qbinom(F, 2, 3)):
        with pytest.raises(DomainError):
            call()
    with pytest.raises(DomainError):
        qnum("anyon", 2)


def test_qfact_examples():
    assert qfact(F, 0) == ONE
    # (1 - q)(1 - q + q^2) expanded by hand
    assert qfact(F, 3) == 1 - 2 * Q + 2 * Q**2 - Q**3
    assert qfact(F, 2).eval_exact(1) == 0


def test_qfact_deep_and_cached():
    assert qfact(B, 60) == qfact(B, 59) * qnum(B, 60)


def test_falling_and_rising_examples():
    assert falling_fact(F, 5, 0) == ONE
    assert falling_fact(F, 3, 2) == (1 - Q + Q**2) * (1 - Q)
    assert falling_fact(F, 2, 2).eval_exact(1) == 0
    assert rising_fact(B, 4, 0) == ONE
    assert rising_fact(F, 0, 2) == 1 - Q
    assert rising_fact(B, 1, 1) == 1 + Q


@given(st.integers(0, 25), st.integers(0, 25))
def test_falling_times_lower_factorial_is_factorial(n, s):
    if s <= n:
        assert falling_fact(F, n, s) * qfact(F, n - s) == qfact(F, n)
        assert rising_fact(B, n, s) * qfact(B, n) == qfact(B, n + s)


def test_qbinom_examples():
    for n in range(8):
        assert qbinom(F, n, 0) == ONE
        if n:
            assert qbinom(F, n, 1) == qnum(F, n)
    assert qbinom(B, 2, 1) == 1 + Q
    assert qbinom(B, 4, 2) == 1 + Q + 2 * Q**2 + Q**3 + Q**4


@given(st.integers(1, 14), st.data())
def test_qbinom_pascal_rule(n, data):
    # fermionic Pascal rule: [n k] = [n-1 k-1] + (-q)^k [n-1 k]
    k = data.draw(st.integers(1, n - 1)) if n > 1 else None
    if k is None:
        return
    lhs = qbinom(F, n, k)
    rhs = qbinom(F, n - 1, k - 1) + qbinom(F, n - 1, k).shift(k) * (-1) ** k
    assert lhs == rhs


def test_shift_identity_examples():
    assert shift_identity_check(7, 0)
    assert shift_identity_check(5, 2)
    assert qnum(F, 3) - 1 == -Q * qnum(F, 2)
    assert shift_identity_check(3, 1)


def test_shift_identity_grid():
    assert all(shift_identity_check(n, r) for n in range(31) for r in range(n + 1))


QS_BELOW = [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)]
QS_ABOVE = [Fraction(11, 10), Fraction(3, 1)]


@pytest.mark.parametrize("q0", QS_BELOW)
def test_fermion_numbers_bounded_and_converge(q0):
    for n in range(0, 120):
        v = qnum(F, n).eval_exact(q0)
        assert 0 <= v <= 1
        assert abs(v - 1 / (1 + q0)) <= q0**n


@pytest.mark.parametrize("q0", QS_ABOVE)
def test_fermion_sign_alternation_above_one(q0):
    for n in range(1, 120):
        v = qnum(F, n).eval_exact(q0)
        assert (v > 0) if n % 2 else (v < 0)


def test_limits_at_one():
    for n in range(60):
        assert qnum(F, n).eval_exact(1) == (1 - (-1) ** n) // 2
        assert qnum(B, n).eval_exact(1) == n
