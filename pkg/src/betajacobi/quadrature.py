"""Gauss-Jacobi rules for expectations against the Beta(a, b) density.

The density is t^{a-1} (1-t)^{b-1} / B(a, b) on [0, 1]. Rules are built by
Golub-Welsch from the monic Jacobi three-term recurrence; since the first
eigenvector components are orthonormal, their squares are already the
normalized weights.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError, EvaluationError, ToleranceError

DEFAULT_NODES = 64
MAX_NODES = 1024
_QL_MAX_ITER = 60


@dataclass(frozen=True)
class QuadratureRule:
    a: float
    b: float
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self):
        return self.nodes.shape[0]

    @property
    def exact_degree(self):
        return 2 * self.size - 1


def jacobi_matrix(a, b, K):
    """Diagonal and off-diagonal of the Jacobi matrix for Beta(a, b) on [0, 1].

    Recurrence coefficients are those of the [-1, 1] Jacobi weight
    (1-u)^{b-1} (1+u)^{a-1}, mapped through t = (1+u)/2.
    """
    A = b - 1.0
    B = a - 1.0
    s = A + B
    k = np.arange(K, dtype=float)
    diag = np.empty(K)
    diag[0] = a / (a + b)
    if K > 1:
        kk = k[1:]
        p = (2 * kk + s) * (2 * kk + s + 2)
        diag[1:] = 0.5 * (p + (B - A) * (B + A)) / p
    off = np.empty(max(K - 1, 0))
    if K > 1:
        off[0] = 4 * (1 + A) * (1 + B) / ((2 + s) ** 2 * (3 + s))
        kk = k[2:]
        q = 2 * kk + s
        off[1:] = 4 * kk * (kk + A) * (kk + B) * (kk + s) / (q * q * (q + 1) * (q - 1))
        off = 0.5 * np.sqrt(off)
    return diag, off


@lru_cache(maxsize=4096)
def _cached_rule(a, b, K):
    diag, off = jacobi_matrix(a, b, K)
    nodes, first, ok = kernels.tridiagonal_ql(diag, off, _QL_MAX_ITER)
    if not ok:
        raise ConvergenceError(
            f"QL eigensolver did not converge for a={a!r}, b={b!r}, K={K} "
            f"(max {_QL_MAX_ITER} sweeps per eigenvalue)"
        )
    weights = first * first
    weights /= weights.sum()
    if K > 1 and not np.all(np.diff(nodes) > 0):
        raise ConvergenceError(f"non-increasing nodes for a={a!r}, b={b!r}, K={K}")
    if nodes[0] <= 0.0 or nodes[-1] >= 1.0:
        raise ConvergenceError(
            f"node outside (0, 1) for a={a!r}, b={b!r}, K={K}: "
            f"[{nodes[0]!r}, {nodes[-1]!r}]"
        )
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(a, b, nodes, weights)


def gauss_jacobi_rule(a, b, K):
    """K-point rule exact for polynomials of degree <= 2K-1 against Beta(a, b)."""
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0 and math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"Beta parameters must be positive, got a={a!r}, b={b!r}")
    if int(K) != K or K < 1:
        raise DomainError(f"K must be a positive integer, got {K!r}")
    return _cached_rule(a, b, int(K))


def _values_at(f, nodes):
    try:
        vals = np.asarray(f(nodes), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != nodes.shape:
        vals = np.array([float(f(float(t))) for t in nodes])
    return vals


def expectation(rule, f):
    """sum_i w_i f(t_i). ``f`` may be vectorized or scalar."""
    vals = _values_at(f, rule.nodes)
    bad = ~np.isfinite(vals)
    if bad.any():
        node = float(rule.nodes[np.argmax(bad)])
        raise EvaluationError(f"f is not finite at node t={node!r}", node=node)
    return float(np.dot(rule.weights, vals))


def adaptive_check(a, b, f, K1, K2):
    """Return the K2-point value and |Q_K2 - Q_K1| as its error estimate."""
    if not K2 > K1:
        raise DomainError(f"need K2 > K1, got K1={K1}, K2={K2}")
    v1 = expectation(gauss_jacobi_rule(a, b, K1), f)
    v2 = expectation(gauss_jacobi_rule(a, b, K2), f)
    return v2, abs(v2 - v1)


def adaptive_expectation(a, b, f, tol, K=DEFAULT_NODES, K_max=MAX_NODES):
    """Double the node count from ``K`` until the estimate is within ``tol``.

    Raises ToleranceError once 2K would exceed ``K_max``.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    while True:
        value, est = adaptive_check(a, b, f, K, 2 * K)
        if est <= tol:
            return value, est
        if 4 * K > K_max:
            raise ToleranceError(
                f"quadrature estimate {est:.3e} above tol {tol:.3e} at K={2 * K}",
                value=value,
                estimate=est,
            )
        K *= 2
