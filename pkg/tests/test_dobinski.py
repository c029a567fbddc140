import pytest

from qfermion.dobinski import SeriesResult, bell_dobinski, classify_regime, qexp_f
from qfermion.errors import DomainError, RegimeError, SingularSeriesError
from qfermion.triangles import bell_numbers


def test_qexp_at_zero():
    res = qexp_f(0.0, 0.5)
    assert res == SeriesResult(1.0, 1, True, "convergent")


def test_qexp_q2_converges_to_direct_sum():
    res = qexp_f(1.0, 2.0, tol=1e-12)
    assert res.converged and res.regime == "convergent"
    # independent direct sum of 40 terms with factorials from the closed form
    total, fact = 1.0, 1.0
    for n in range(1, 40):
        fact *= (1 - (-2.0) ** n) / 3.0
        total += 1.0 / fact
    assert res.value == pytest.approx(total, rel=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
def test_divergent_below_one(q):
    res = qexp_f(1.0, q, tol=1e-12, max_terms=300)
    assert res.regime == "divergent" and not res.converged
    assert classify_regime(1.0, q) == "divergent"


def test_convergent_below_one_for_small_x():
    res = qexp_f(0.2, 0.5, tol=1e-14)
    assert res.regime == "convergent" and res.converged


def test_classify_boundary():
    assert classify_regime(1.0, 1.0) == "boundary"
    assert classify_regime(0.5, 1.0) == "boundary"
    assert classify_regime(2.0, 0.0 + 1.0) == "boundary"
    assert classify_regime(1 / 1.5, 0.5) == "boundary"


def test_singular_at_one():
    with pytest.raises(SingularSeriesError) as info:
        qexp_f(1.0, 1.0)
    assert info.value.regime == "boundary"


def test_bad_inputs():
    for args in ((1.0, 0.0), (1.0, -2.0)):
        with pytest.raises(DomainError):
            qexp_f(*args)
    with pytest.raises(DomainError):
        qexp_f(1.0, 2.0, tol=0.0)
    with pytest.raises(DomainError):
        qexp_f(1.0, 2.0, max_terms=1)


def test_bell_examples():
    assert bell_dobinski(1, 2.0).value == pytest.approx(1.0, abs=1e-12)
    assert bell_dobinski(2, 2.0).value == pytest.approx(-1.0, abs=1e-12)
    exact = bell_numbers(4)[3].eval_float(1.5)
    assert abs(bell_dobinski(4, 1.5).value - exact) < 1e-8


@pytest.mark.parametrize("q", [1.2, 1.5, 2.0, 3.0])
def test_bell_matches_exact(q):
    bells = bell_numbers(6)
    for r in range(1, 7):
        res = bell_dobinski(r, q)
        exact = bells[r - 1].eval_float(q)
        assert res.converged
        assert abs(res.value - exact) / max(1.0, abs(exact)) < 1e-8


def test_bell_refuses_q_at_most_one():
    with pytest.raises(RegimeError) as info:
        bell_dobinski(2, 0.5)
    assert info.value.regime == "divergent"
    with pytest.raises(SingularSeriesError):
        bell_dobinski(2, 1.0)


def test_bell_reports_non_convergence():
    res = bell_dobinski(3, 1.2, max_terms=5)
    assert not res.converged and res.terms_used == 5


def test_deterministic():
    a = [bell_dobinski(r, 1.7).value for r in range(1, 6)]
    b = [bell_dobinski(r, 1.7).value for r in range(1, 6)]
    assert a == b
