import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qfermion import _pykernels
from qfermion.laurent import LaurentPoly

try:
    from qfermion import _ckernels
except ImportError:  # pure-Python install
    _ckernels = None

small_rationals = st.one_of(
    st.integers(min_value=-50, max_value=50),
    st.fractions(min_value=-20, max_value=20, max_denominator=12),
)

laurent_polys = st.dictionaries(
    st.integers(min_value=-8, max_value=12), small_rationals, max_size=7
).map(LaurentPoly)

nonzero_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda f: f != 0)


KERNEL_MODULES = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    KERNEL_MODULES.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=KERNEL_MODULES, scope="module")
def kernels(request):
    return request.param


def frac(text):
    return Fraction(text)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
