"""Time the numba kernels against the pure Python / numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are built in-process from the same loop sources, so the
comparison does not depend on BETAJACOBI_NUMBA.
"""
import argparse
import timeit

import numba
import numpy as np

from betajacobi import kernels
from betajacobi.quadrature import jacobi_matrix


def best_of(fn, repeat):
    fn()  # warm-up, triggers compilation for the jitted variants
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    ql_jit = numba.njit(kernels._tridiagonal_ql_loop)
    table_jit = numba.njit(kernels._moment_table_loop)

    rows = []
    for K in (64, 128, 512):
        diag, off = jacobi_matrix(2.5, 3.5, K)
        rows.append((
            f"tridiagonal QL, K={K}",
            best_of(lambda: kernels._tridiagonal_ql_loop(diag, off, 60), args.repeat),
            best_of(lambda: ql_jit(diag, off, 60), args.repeat),
        ))
    xs = np.linspace(0.0, 1.0, 100_001)
    for m_max in (8, 32):
        rows.append((
            f"moment table, 1e5 points, m<={m_max} (numpy)",
            best_of(lambda: kernels._moment_table_numpy(50.0, 0.5, 1.5, xs, m_max), args.repeat),
            best_of(lambda: table_jit(50.0, 0.5, 1.5, xs, m_max), args.repeat),
        ))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'fallback [s]':>12}  {'numba [s]':>10}  {'speedup':>8}")
    for name, slow, fast in rows:
        print(f"{name:<{width}}  {slow:12.5f}  {fast:10.5f}  {slow / fast:8.1f}x")


if __name__ == "__main__":
    main()
