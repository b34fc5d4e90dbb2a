"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the hot primitives (dense polynomial arithmetic mod p and matrix
reduction) on desk-scale inputs and prints a timing table.

    python3 benchmarks/bench_kernels.py
"""

import time
from random import Random

from adele_forge._kernels import pure

try:
    from adele_forge._kernels import _speedups
except ImportError:
    _speedups = None


def rand_poly(rng, deg, p):
    coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
    return coeffs


def bench(label, fn, repeat):
    best = None
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(repeat):
            fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def make_cases(backend):
    p = 101
    rng = Random(7)
    a = rand_poly(rng, 64, p)
    b = rand_poly(rng, 48, p)
    m = rand_poly(rng, 32, p)
    mat = [[rng.randrange(p) for _ in range(80)] for _ in range(60)]
    return [
        ("poly_mul deg 64 x 48", lambda: backend.poly_mul(a, b, p), 400),
        ("poly_divmod deg 64 / 32", lambda: backend.poly_divmod(a, m, p), 400),
        ("poly_gcd deg 64, 48", lambda: backend.poly_gcd(a, b, p), 100),
        ("poly_powmod a^(p^3) mod m", lambda: backend.poly_powmod(a, p**3, m, p), 40),
        ("mat_rref 60 x 80", lambda: backend.mat_rref([row[:] for row in mat], p), 20),
    ]


def main():
    backends = [("pure", pure)]
    if _speedups is not None:
        backends.append(("cython", _speedups))
    results = {}
    for name, mod in backends:
        for label, fn, repeat in make_cases(mod):
            results.setdefault(label, {})[name] = bench(label, fn, repeat) / repeat
    width = max(len(label) for label in results)
    header = "%-*s %12s %12s %8s" % (width, "kernel", "pure (us)", "cython (us)", "speedup")
    print(header)
    print("-" * len(header))
    for label, times in results.items():
        pure_t = times["pure"] * 1e6
        if "cython" in times:
            cy_t = times["cython"] * 1e6
            print("%-*s %12.1f %12.1f %7.1fx" % (width, label, pure_t, cy_t, pure_t / cy_t))
        else:
            print("%-*s %12.1f %12s %8s" % (width, label, pure_t, "n/a", "n/a"))
    if _speedups is None:
        print("\ncompiled backend not built; install with `pip install -e .`")


if __name__ == "__main__":
    main()
