import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qfermion.errors import DomainError
from qfermion.laurent import ZERO
from qfermion.pointprocess import (
    BaseDensity,
    MomentQuery,
    QuadratureError,
    adaptive_simpson,
    finite_interval_moment,
    infinitesimal_consistency,
    interval_for_mass,
    interval_mass,
    joint_density_coefficient,
    moment_terms,
    pair_mass,
)
from qfermion.qnumbers import falling_fact, qnum
from qfermion.triangles import build_triangle

UNIFORM = BaseDensity.uniform(0.0, 1.0)
TRI = BaseDensity.triangular(0.0, 2.0, 0.5)


def tri_cdf(x, lo=0.0, hi=2.0, c=0.5):
    # closed-form antiderivative of the triangular density
    if x <= c:
        return (x - lo) ** 2 / ((hi - lo) * (c - lo))
    return 1.0 - (hi - x) ** 2 / ((hi - lo) * (hi - c))


def test_uniform_mass():
    assert interval_mass(UNIFORM, 0.0, 1.0) == pytest.approx(1.0, abs=1e-10)
    assert interval_mass(UNIFORM, 0.0, 0.25) == pytest.approx(0.25, abs=1e-10)


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (0.2, 0.4), (0.3, 1.9), (0.0, 2.0)])
def test_triangular_mass_against_antiderivative(a, b):
    assert interval_mass(TRI, a, b) == pytest.approx(tri_cdf(b) - tri_cdf(a), abs=1e-10)


def test_tabulated_density():
    d = BaseDensity.tabulated([(0, 0), (1, 2), (2, 0)], normalize=True)
    assert d(0.5) == pytest.approx(0.5)
    assert interval_mass(d, 0.0, 2.0) == pytest.approx(1.0, abs=1e-10)
    assert interval_mass(d, 0.0, 0.5) == pytest.approx(0.125, abs=1e-10)
    with pytest.raises(DomainError):
        BaseDensity.tabulated([(0, 1), (1, 2)])
    with pytest.raises(DomainError):
        BaseDensity.tabulated([(0, -1), (1, 3)], normalize=True)


def test_out_of_support():
    with pytest.raises(DomainError):
        interval_mass(UNIFORM, -0.1, 0.5)


@given(st.floats(0.0, 2.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_mass_additive(x, y, z):
    a, b, c = sorted((x, y, z))
    total = interval_mass(TRI, a, c)
    assert interval_mass(TRI, a, b) + interval_mass(TRI, b, c) == pytest.approx(total, abs=3e-10)
    assert -1e-10 <= total <= 1 + 1e-10


def test_simpson_polynomial_exact_and_failure():
    assert adaptive_simpson(lambda x: x**3, 0.0, 2.0) == pytest.approx(4.0, abs=1e-13)
    with pytest.raises(QuadratureError):
        adaptive_simpson(lambda x: 1.0 / x if x else 1e300, 0.0, 1.0, tol=1e-12, max_depth=10)


def test_joint_density_coefficient():
    q = Fraction(2, 3)
    assert joint_density_coefficient(5, 0, q) == 1
    assert joint_density_coefficient(5, 1, q) == qnum("fermion", 5).eval_exact(q)
    assert joint_density_coefficient(5, 2, q) == (qnum("fermion", 5) * qnum("fermion", 4)).eval_exact(q)
    with pytest.raises(DomainError):
        joint_density_coefficient(2, 3, q)


def test_pair_mass_factorises():
    for n, q in ((4, 0.7), (5, 0.3)):
        p = interval_mass(TRI, 0.1, 1.3)
        direct = pair_mass(n, q, TRI, 0.1, 1.3)
        assert direct == pytest.approx(falling_fact("fermion", n, 2).eval_float(q) * p * p, rel=1e-8)


def test_full_support_recovers_power():
    for n in range(0, 9):
        for r in range(1, 6):
            q = Fraction(3, 5)
            _, moment = moment_terms(n, r, q, 1)
            assert moment == (qnum("fermion", n) ** r).eval_exact(q)


def test_first_moment_is_linear():
    for p in (0.0, 0.2, 0.9):
        _, m = moment_terms(6, 1, 0.4, p)
        assert m == pytest.approx(qnum("fermion", 6).eval_float(0.4) * p)


def test_even_n_at_q_one_vanishes():
    for n in (0, 2, 4, 6):
        for r in range(1, 5):
            for p in (Fraction(1, 3), Fraction(1)):
                assert moment_terms(n, r, 1, p)[1] == 0


def test_second_moment_decomposition():
    tri = build_triangle("stirling2f", 2)
    n, q, p = 7, Fraction(4, 5), Fraction(1, 7)
    pieces, total = moment_terms(n, 2, q, p)
    assert pieces[0]["coefficient"] == (tri.entry(2, 1) * falling_fact("fermion", n, 1)).eval_exact(q)
    assert pieces[1]["coefficient"] == (tri.entry(2, 2) * falling_fact("fermion", n, 2)).eval_exact(q)
    assert pieces[0]["contribution"] == pieces[0]["coefficient"] * p
    assert pieces[1]["contribution"] == pieces[1]["coefficient"] * p**2
    assert total == sum(x["contribution"] for x in pieces)


def test_finite_interval_moment_query():
    query = MomentQuery(5, 3, (0.0, 1.0), 0.6)
    assert finite_interval_moment(query, UNIFORM) == pytest.approx(qnum("fermion", 5).eval_float(0.6) ** 3, rel=1e-9)
    with pytest.raises(DomainError):
        MomentQuery(5, 3, (0.5, 0.5), 0.6)


def test_interval_for_mass():
    a, b = interval_for_mass(TRI, 0.3)
    assert interval_mass(TRI, a, b) == pytest.approx(0.3, abs=1e-9)


def test_infinitesimal_consistency():
    rep = infinitesimal_consistency(5, 0.7, UNIFORM, [0.0, 0.01, 0.5])
    assert rep["pass"]
    zero = [e for e in rep["entries"] if e["p"] == 0.0]
    assert all(e["moment"] == 0 for e in zero)
    assert infinitesimal_consistency(6, 0.4, TRI, [0.001, 0.01, 0.1])["pass"]
