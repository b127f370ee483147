"""Powers of the operator on polynomials and their limits.

In the regular case alpha, beta > -1 the iterates collapse onto the
constant mu_n(p); as n grows, mu_n tends to the Beta(2 alpha + 2,
2 beta + 2) expectation. When alpha or beta is -1, the iterates instead
converge to an endpoint interpolant.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import quadrature
from .errors import DomainError
from .operator import CaseTag, JacobiParams, Polynomial, operator_matrix
from .special import elementary_symmetric, rising_factorial

CONVERGED = 1e-14


@dataclass(frozen=True)
class SymmetricSums:
    k: int
    alpha: float
    sums: np.ndarray

    def __getitem__(self, j):
        return float(self.sums[j])


def symmetric_sums(k, alpha):
    """s_0..s_k of the numbers alpha+1, ..., alpha+k."""
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    sums = elementary_symmetric([alpha + i for i in range(1, int(k) + 1)])
    sums.setflags(write=False)
    return SymmetricSums(int(k), float(alpha), sums)


def eigenvalue(cfg, k):
    """n^k / (n + alpha + beta + 2)^{k̄}, the eigenvalue on degree-k polynomials."""
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    shift = cfg.alpha + cfg.beta + 2.0
    return math.exp(sum(math.log(cfg.n / (cfg.n + shift + i)) for i in range(int(k))))


def _matrix_power(M, m, stop_early):
    result = np.eye(M.shape[0])
    power = M.copy()
    while m:
        if stop_early and np.max(np.abs(power[:, 1:]), initial=0.0) < CONVERGED:
            # power is (numerically) the rank-one limit L with M^r L = L
            return power
        if m & 1:
            result = result @ power
        m >>= 1
        if m:
            power = power @ power
    return result


def iterate_polynomial(cfg, p, m):
    """The m-th operator power applied to the polynomial ``p``."""
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")
    M = operator_matrix(cfg, p.degree).entries
    P = _matrix_power(M, int(m), cfg.params.is_regular)
    return Polynomial(p.padded(p.degree + 1) @ P)


@dataclass(frozen=True)
class MuFunctional:
    n: int
    params: JacobiParams
    moments: np.ndarray

    def __call__(self, p):
        if p.degree >= self.moments.shape[0]:
            raise DomainError(f"need moments up to {p.degree}, have {self.moments.shape[0] - 1}")
        return float(np.dot(p.coeffs, self.moments[: p.degree + 1]))


def _require_regular(params):
    if not params.is_regular:
        raise DomainError(
            f"{params.case_tag.name} iterates converge to a boundary interpolant; "
            "use boundary_iterate_limit"
        )


def mu_moments(cfg, k_max):
    """mu_n(e_0), ..., mu_n(e_{k_max}) for the regular case.

    With c = alpha + beta + 2, the recurrence denominator (n + c)^{k̄} - n^k
    equals sum_{j<k} e_{k-j}(c, ..., c+k-1) n^j. It is evaluated in that
    form, with numerator and denominator scaled by n^{1-k}, so no cancellation
    or overflow occurs for large n.
    """
    _require_regular(cfg.params)
    if int(k_max) != k_max or k_max < 0:
        raise DomainError(f"k_max must be a nonnegative integer, got {k_max!r}")
    n = float(cfg.n)
    c = cfg.alpha + cfg.beta + 2.0
    mu = np.empty(int(k_max) + 1)
    mu[0] = 1.0
    for k in range(1, int(k_max) + 1):
        s = symmetric_sums(k, cfg.alpha).sums
        e = elementary_symmetric([c + i for i in range(k)])
        scale = n ** (np.arange(k) - (k - 1))
        denom = np.dot(e[k - np.arange(k)], scale)
        numer = np.dot(s[k - np.arange(k)] * scale, mu[:k])
        mu[k] = numer / denom
    mu.setflags(write=False)
    return MuFunctional(cfg.n, cfg.params, mu)


def iterate_limit(cfg, p):
    """Constant limit mu_n(p) of the iterates applied to ``p``."""
    return mu_moments(cfg, p.degree)(p)


def boundary_iterate_limit(params, f0, f1, x):
    """Limit of the iterates at x for the cases with alpha or beta equal to -1."""
    tag = params.case_tag
    if tag is CaseTag.BOTH_MINUS_ONE:
        return (1 - x) * f0 + x * f1
    if tag is CaseTag.BETA_MINUS_ONE:
        return float(f1) + 0.0 * x
    if tag is CaseTag.ALPHA_MINUS_ONE:
        return float(f0) + 0.0 * x
    raise DomainError("regular case has a constant limit; use iterate_limit")


def _check_limit_params(alpha, beta):
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"need alpha, beta > -1, got {alpha!r}, {beta!r}")


def limit_measure_moment(alpha, beta, k):
    """(2 alpha + 2)^{k̄} / (2 alpha + 2 beta + 4)^{k̄}."""
    _check_limit_params(alpha, beta)
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    return rising_factorial(2 * alpha + 2, k) / rising_factorial(2 * alpha + 2 * beta + 4, k)


def limit_functional(alpha, beta, f, tol=1e-12):
    """Normalized integral of f against t^{2 alpha + 1} (1-t)^{2 beta + 1}."""
    _check_limit_params(alpha, beta)
    value, _ = quadrature.adaptive_expectation(2 * alpha + 2, 2 * beta + 2, f, tol)
    return value
