"""Beta operators with Jacobi weights on C[0, 1].

For n >= 2 and alpha, beta >= -1 the operator averages f against the
Beta(nx + alpha + 1, n - nx + beta + 1) density. When alpha or beta equals
-1 the density degenerates at one or both endpoints and the operator
interpolates f there instead.
"""
from dataclasses import dataclass
import enum
import math
import warnings

import numpy as np

from . import quadrature
from .errors import DomainError
from .special import elementary_symmetric

BOUNDARY_SNAP = 1e-12
NEAR_SINGULAR = 1e-8
MAX_DEGREE = 64


class CaseTag(enum.Enum):
    BOTH_MINUS_ONE = "both_minus_one"
    ALPHA_MINUS_ONE = "alpha_minus_one"
    BETA_MINUS_ONE = "beta_minus_one"
    REGULAR = "regular"


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float
    case_tag: CaseTag

    @property
    def is_regular(self):
        return self.case_tag is CaseTag.REGULAR


def _snap(v, name):
    v = float(v)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v!r}")
    if abs(v + 1.0) <= BOUNDARY_SNAP:
        return -1.0
    if v < -1.0:
        raise DomainError(f"{name} must be >= -1, got {v!r}")
    return v


def classify(alpha, beta):
    alpha = _snap(alpha, "alpha")
    beta = _snap(beta, "beta")
    if alpha == -1.0 and beta == -1.0:
        tag = CaseTag.BOTH_MINUS_ONE
    elif alpha == -1.0:
        tag = CaseTag.ALPHA_MINUS_ONE
    elif beta == -1.0:
        tag = CaseTag.BETA_MINUS_ONE
    else:
        tag = CaseTag.REGULAR
    return JacobiParams(alpha, beta, tag)


@dataclass(frozen=True)
class OperatorConfig:
    n: int
    params: JacobiParams

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def make(cls, n, alpha, beta):
        return cls(n, classify(alpha, beta))

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def beta(self):
        return self.params.beta

    @property
    def case_tag(self):
        return self.params.case_tag

    def beta_parameters(self, x):
        """(a, b) of the Beta density the operator integrates against at x."""
        nx = self.n * x
        return nx + self.alpha + 1.0, self.n - nx + self.beta + 1.0


class Polynomial:
    """Dense monomial-basis polynomial; ``coeffs[k]`` multiplies x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float)).copy()
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        if c.shape[0] - 1 > MAX_DEGREE:
            raise DomainError(f"degree {c.shape[0] - 1} exceeds {MAX_DEGREE}")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def monomial(cls, k):
        c = np.zeros(k + 1)
        c[k] = 1.0
        return cls(c)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x, self.coeffs)

    def derivative(self, order=1):
        return Polynomial(np.polynomial.polynomial.polyder(self.coeffs, order))

    def padded(self, size):
        out = np.zeros(size)
        out[: self.coeffs.shape[0]] = self.coeffs
        return out

    def __add__(self, other):
        size = max(self.coeffs.shape[0], other.coeffs.shape[0])
        return Polynomial(self.padded(size) + other.padded(size))

    def __sub__(self, other):
        size = max(self.coeffs.shape[0], other.coeffs.shape[0])
        return Polynomial(self.padded(size) - other.padded(size))

    def __mul__(self, scalar):
        return Polynomial(self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Polynomial) and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()!r})"


@dataclass(frozen=True)
class OperatorMatrix:
    """Row k holds the monomial coefficients of the image of e_k."""

    cfg: OperatorConfig
    entries: np.ndarray

    @property
    def d(self):
        return self.entries.shape[0] - 1

    def apply(self, p):
        if p.degree > self.d:
            raise DomainError(f"polynomial degree {p.degree} exceeds matrix degree {self.d}")
        return Polynomial(p.padded(self.d + 1) @ self.entries)


def _scalar(f, t):
    return float(np.asarray(f(t), dtype=float))


def evaluate(cfg, f, x, tol=1e-12):
    """Apply the operator to ``f`` at the point ``x``.

    Endpoint values of the degenerate cases are returned without quadrature.
    Inside (0, 1), the value is a Gauss-Jacobi expectation doubled until the
    rule-to-rule change is below ``tol``.
    """
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    tag = cfg.case_tag
    if x == 0.0 and tag in (CaseTag.BOTH_MINUS_ONE, CaseTag.ALPHA_MINUS_ONE):
        return _scalar(f, 0.0)
    if x == 1.0 and tag in (CaseTag.BOTH_MINUS_ONE, CaseTag.BETA_MINUS_ONE):
        return _scalar(f, 1.0)
    a, b = cfg.beta_parameters(x)
    if a < NEAR_SINGULAR:
        warnings.warn(f"Beta parameter a={a:.3g} near 0 at x={x!r}; using f(0)", RuntimeWarning)
        return _scalar(f, 0.0)
    if b < NEAR_SINGULAR:
        warnings.warn(f"Beta parameter b={b:.3g} near 0 at x={x!r}; using f(1)", RuntimeWarning)
        return _scalar(f, 1.0)
    value, _ = quadrature.adaptive_expectation(a, b, f, tol)
    return value


def evaluate_grid(cfg, f, xs, tol=1e-12):
    return np.array([evaluate(cfg, f, x, tol) for x in np.asarray(xs, dtype=float).ravel()])


def _image_row(n, alpha, shift, k):
    # coeff of x^j: s_{k-j}(k, alpha) n^j / (n + shift)^{k̄}, with
    # n^j / (n + shift)^{k̄} formed factor by factor so large n, k cannot overflow
    sums = elementary_symmetric([alpha + i for i in range(1, k + 1)])
    denom = n + shift + np.arange(k, dtype=float)
    ratio = np.empty(k + 1)
    for j in range(k + 1):
        ratio[j] = np.prod(n / denom[:j]) * np.prod(1.0 / denom[j:])
    return sums[k - np.arange(k + 1)] * ratio


def monomial_image(cfg, k):
    """Image of e_k as a polynomial of degree k."""
    if int(k) != k or k < 0:
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    return Polynomial(_image_row(cfg.n, cfg.alpha, cfg.alpha + cfg.beta + 2.0, int(k)))


def operator_matrix(cfg, d):
    if int(d) != d or d < 0:
        raise DomainError(f"d must be a nonnegative integer, got {d!r}")
    d = int(d)
    shift = cfg.alpha + cfg.beta + 2.0
    entries = np.zeros((d + 1, d + 1))
    for k in range(d + 1):
        entries[k, : k + 1] = _image_row(cfg.n, cfg.alpha, shift, k)
    entries.setflags(write=False)
    return OperatorMatrix(cfg, entries)
