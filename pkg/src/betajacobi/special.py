"""Scalar special functions used throughout the package."""
import math

import numpy as np

from .errors import DomainError


def _positive(a, name="argument"):
    a = float(a)
    if not (a > 0.0) or not math.isfinite(a):
        raise DomainError(f"{name} must be a finite positive real, got {a!r}")
    return a


def log_gamma(a):
    """ln Γ(a) for a > 0."""
    return math.lgamma(_positive(a))


def log_beta(a, b):
    a = _positive(a, "a")
    b = _positive(b, "b")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta_function(a, b):
    """B(a, b) evaluated in log-space, so large arguments underflow to 0
    rather than overflowing intermediate gammas."""
    return math.exp(log_beta(a, b))


def rising_factorial(a, r):
    """(a)^{r̄} = a (a+1) ... (a+r-1); the empty product for r = 0."""
    r = int(r)
    if r < 0:
        raise DomainError(f"r must be nonnegative, got {r}")
    out = 1.0
    for i in range(r):
        out *= a + i
    return out


def odd_double_factorial(l):
    """(2l-1)!! as an int for l <= 15, as a float beyond."""
    if int(l) != l or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    l = int(l)
    out = 1
    for k in range(3, 2 * l, 2):
        out *= k
    return out if l <= 15 else float(out)


def double_factorial(k):
    """k!! for k >= -1 with (-1)!! = 0!! = 1."""
    k = int(k)
    if k < -1:
        raise DomainError(f"k must be >= -1, got {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def elementary_symmetric(values):
    """Elementary symmetric sums e_0..e_k of ``values``.

    Entry j is the coefficient of y^{k-j} in prod_i (y + values[i]).
    """
    coeffs = np.zeros(len(values) + 1)
    coeffs[0] = 1.0
    for i, v in enumerate(values):
        # multiply the running product by (y + v)
        coeffs[1 : i + 2] = coeffs[1 : i + 2] + v * coeffs[0 : i + 1]
    return coeffs
