"""Select the term kernels: compiled extension if built, else pure Python."""

try:
    from qfermion._ckernels import add_terms, mul_terms

    BACKEND = "cython"
except ImportError:  # extension not compiled
    from qfermion._pykernels import add_terms, mul_terms

    BACKEND = "python"

__all__ = ["BACKEND", "add_terms", "mul_terms"]
