"""Hot numeric loops.

Each kernel has a loop form written in the numba-compatible subset and,
where the loop vectorizes, a numpy form. The module-level names
(``tridiagonal_ql``, ``moment_table``) point at whichever backend
:mod:`betajacobi._accel` selected.
"""
import math

import numpy as np

from ._accel import NUMBA_ENABLED, jit

_EPS = 2.220446049250313e-16


def _tridiagonal_ql_loop(diag, offdiag, max_iter):
    # Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal
    # matrix. Only the first row of the eigenvector matrix is accumulated,
    # which is all Golub-Welsch needs. Returns (eigenvalues, first_row, ok).
    n = diag.shape[0]
    d = diag.copy()
    e = np.zeros(n)
    for i in range(n - 1):
        e[i] = offdiag[i]
    z = np.zeros(n)
    z[0] = 1.0
    ok = True
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            if it >= max_iter:
                ok = False
                break
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
        if not ok:
            break
    order = np.argsort(d)
    return d[order], z[order], ok


def _moment_table_loop(n, alpha, beta, xs, m_max):
    out = np.empty((xs.shape[0], m_max + 1))
    ab2 = alpha + beta + 2.0
    for r in range(xs.shape[0]):
        x = xs[r]
        big_x = x * (1.0 - x)
        out[r, 0] = 1.0
        if m_max >= 1:
            out[r, 1] = (alpha + 1.0 - ab2 * x) / (n + ab2)
        for m in range(1, m_max):
            out[r, m + 1] = (
                m * big_x * out[r, m - 1]
                + (m + alpha + 1.0 - (2.0 * m + ab2) * x) * out[r, m]
            ) / (n + m + ab2)
    return out


def _moment_table_numpy(n, alpha, beta, xs, m_max):
    xs = np.asarray(xs, dtype=float)
    out = np.empty((xs.shape[0], m_max + 1))
    ab2 = alpha + beta + 2.0
    big_x = xs * (1.0 - xs)
    out[:, 0] = 1.0
    if m_max >= 1:
        out[:, 1] = (alpha + 1.0 - ab2 * xs) / (n + ab2)
    for m in range(1, m_max):
        out[:, m + 1] = (
            m * big_x * out[:, m - 1]
            + (m + alpha + 1.0 - (2.0 * m + ab2) * xs) * out[:, m]
        ) / (n + m + ab2)
    return out


if NUMBA_ENABLED:
    tridiagonal_ql = jit(_tridiagonal_ql_loop)
    moment_table = jit(_moment_table_loop)
else:
    tridiagonal_ql = _tridiagonal_ql_loop
    moment_table = _moment_table_numpy
