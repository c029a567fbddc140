"""Compare the compiled and pure-Python polynomial kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit
from fractions import Fraction

from qfermion import _pykernels

try:
    from qfermion import _ckernels
except ImportError:
    _ckernels = None


def dense(rng, size, low, rational=False):
    exps = tuple(range(low, low + size))
    if rational:
        coeffs = tuple(Fraction(rng.randint(-99, 99) or 1, rng.randint(1, 9)) for _ in exps)
    else:
        coeffs = tuple(rng.randint(-10**6, 10**6) or 1 for _ in exps)
    return exps, coeffs


def cases():
    rng = random.Random(0)
    a, b = dense(rng, 200, -50), dense(rng, 200, 10)
    big_a = (a[0], tuple(c * 10**30 for c in a[1]))
    fa, fb = dense(rng, 60, 0, True), dense(rng, 60, -5, True)
    small = dense(rng, 12, 0), dense(rng, 12, 0)
    return {
        "mul 200x200 int64": (a, b),
        "mul 200x200 bigint": (big_a, b),
        "mul 60x60 rational": (fa, fb),
        "mul 12x12 int64": small,
    }


def bench(mod, args, number):
    (ea, ca), (eb, cb) = args
    return min(timeit.repeat(lambda: mod.mul_terms(ea, ca, eb, cb), number=number, repeat=5)) / number


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    opts = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python backend is available")
    print(f"{'case':<22}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, args in cases().items():
        (ea, ca), (eb, cb) = args
        py = bench(_pykernels, args, opts.repeat)
        if _ckernels is None:
            print(f"{name:<22}{py * 1e3:>14.3f}{'-':>14}{'-':>10}")
            continue
        assert _ckernels.mul_terms(ea, ca, eb, cb) == _pykernels.mul_terms(ea, ca, eb, cb)
        cy = bench(_ckernels, args, opts.repeat)
        print(f"{name:<22}{py * 1e3:>14.3f}{cy * 1e3:>14.3f}{py / cy:>9.1f}x")

    # end-to-end: the falling-factorial identity with each backend swapped in
    from qfermion import laurent
    from qfermion.qnumbers import _qnum, _qfact
    from qfermion.triangles import verify_falling_identity

    for label, mod in (("python", _pykernels), ("cython", _ckernels)):
        if mod is None:
            continue
        laurent.mul_terms, laurent.add_terms = mod.mul_terms, mod.add_terms
        _qnum.cache_clear()
        _qfact.cache_clear()
        t = min(timeit.repeat(lambda: verify_falling_identity(10, 14), number=1, repeat=3))
        print(f"falling identity r<=10 n<=14 [{label}]: {t * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
