from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conftest import laurent_polys
from qfermion import _kernels, _pykernels


def brute_mul(a, b):
    acc = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in acc.items() if c}


def split(p):
    return list(p.terms), list(p.terms.values())


@given(laurent_polys, laurent_polys)
def test_mul_matches_brute_force(kernels, a, b):
    exps, coeffs = kernels.mul_terms(*split(a), *split(b))
    assert exps == sorted(exps)
    assert all(coeffs)
    assert dict(zip(exps, coeffs)) == brute_mul(a.terms, b.terms)


@given(laurent_polys, laurent_polys, st.sampled_from([1, -1]))
def test_add_matches_brute_force(kernels, a, b, sign):
    exps, coeffs = kernels.add_terms(*split(a), *split(b), sign)
    expected = dict(a.terms)
    for e, c in b.terms.items():
        expected[e] = expected.get(e, 0) + sign * c
    assert dict(zip(exps, coeffs)) == {e: c for e, c in expected.items() if c}
    assert exps == sorted(exps)


def test_large_coefficients_leave_int64_path(kernels):
    big = 3**45
    exps, coeffs = kernels.mul_terms([0, 1], [big, big], [0, 1], [big, -big])
    assert dict(zip(exps, coeffs)) == {0: big * big, 2: -big * big}


def test_sparse_wide_span(kernels):
    exps, coeffs = kernels.mul_terms([-500, 500], [1, 1], [-500, 500], [1, -1])
    assert dict(zip(exps, coeffs)) == {-1000: 1, 1000: -1}


def test_fractions_canonicalised(kernels):
    exps, coeffs = kernels.mul_terms([0, 1], [Fraction(1, 2), 1], [0, 1], [2, Fraction(1, 3)])
    assert coeffs[0] == 1 and type(coeffs[0]) is int
    assert dict(zip(exps, coeffs)) == {0: 1, 1: Fraction(13, 6), 2: Fraction(1, 3)}


def test_empty_operands(kernels):
    assert kernels.mul_terms([], [], [0], [1]) == ([], [])
    assert kernels.add_terms([], [], [], []) == ([], [])


def test_backend_is_selected():
    assert _kernels.BACKEND in ("cython", "python")
    if _kernels.BACKEND == "python":
        assert _kernels.mul_terms is _pykernels.mul_terms
