"""Large-n behaviour of the moments and Voronovskaya-type limits."""
from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError
from .moments import moment_grid
from .operator import evaluate
from .special import double_factorial, odd_double_factorial


@dataclass(frozen=True)
class DerivativeBundle:
    """f(x), f'(x), ... at a single point; ``values[r]`` is the r-th derivative."""

    x: float
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def require(self, order):
        if len(self.values) < order + 1:
            raise DomainError(f"need derivatives up to order {order}, have {len(self.values) - 1}")
        return self.values

    @classmethod
    def of_polynomial(cls, poly, x, order=4):
        vals = [float(poly(x))]
        for _ in range(order):
            poly = poly.derivative()
            vals.append(float(poly(x)))
        return cls(float(x), tuple(vals))


@dataclass(frozen=True)
class ConvergenceReport:
    ns: tuple
    raw: tuple
    extrapolated: float
    target: float

    @property
    def achieved_error(self):
        return abs(self.extrapolated - self.target)


def _check_l(l):
    if int(l) != l or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    return int(l)


def even_moment_limit(l, x):
    """lim n^l T_{n,2l}(x) = (2l-1)!! X^l, the same for every alpha, beta."""
    l = _check_l(l)
    return odd_double_factorial(l) * (x * (1 - x)) ** l


def odd_moment_limit(l, alpha, beta, x):
    """lim n^l T_{n,2l-1}(x)."""
    l = _check_l(l)
    X = x * (1 - x)
    dX = 1 - 2 * x
    tail = sum(double_factorial(2 * k - 1) / double_factorial(2 * k - 2) for k in range(1, l))
    drift = alpha + 1 - (alpha + beta + 2) * x
    return X ** (l - 1) * (
        math.factorial(l - 1) * 2 ** (l - 1) * dX * tail + odd_double_factorial(l) * drift
    )


def voronovskaya_limit(bundle, alpha, beta):
    """lim n (B_n f - f)(x) = X/2 f'' + (alpha + 1 - (alpha + beta + 2) x) f'."""
    v = bundle.require(2)
    x = bundle.x
    return x * (1 - x) / 2 * v[2] + (alpha + 1 - (alpha + beta + 2) * x) * v[1]


def second_order_voronovskaya_limit(bundle, alpha, beta):
    """lim n [n (B_n f - f)(x) - X/2 f''(x) - (alpha + 1 - (alpha + beta + 2) x) f'(x)]."""
    v = bundle.require(4)
    x = bundle.x
    a, b = alpha, beta
    X = x * (1 - x)
    drift = a + 1 - (a + b + 2) * x
    quad = (
        (a + 1) * (a + 2)
        - (2 * a * a + 2 * a * b + 10 * a + 4 * b + 11) * x
        + x * x * ((a + b) * (a + b + 7) + 11)
    )
    return (
        X * X * v[4] / 8
        + X * (3 * a + 5 - (3 * a + 3 * b + 10) * x) * v[3] / 6
        - (a + b + 2) * drift * v[1]
        + 0.5 * v[2] * quad
    )


def second_order_voronovskaya_limit_reduced(bundle):
    """The alpha = beta = -1 specialisation, (3X^2 f'''' + 8X(1-2x) f''' - 12X f'') / 24."""
    v = bundle.require(4)
    x = bundle.x
    X = x * (1 - x)
    return (3 * X * X * v[4] + 8 * X * (1 - 2 * x) * v[3] - 12 * X * v[2]) / 24


def higher_order_expansion_target(l, alpha, beta, bundle, include_order):
    """Limit of ``higher_order_expansion_residual`` as n -> infinity."""
    l = _check_l(l)
    v = bundle.require(2 * l)
    x = bundle.x
    target = odd_double_factorial(l) / math.factorial(2 * l) * (x * (1 - x)) ** l * v[2 * l]
    if include_order == 2 * l - 2:
        target += odd_moment_limit(l, alpha, beta, x) / math.factorial(2 * l - 1) * v[2 * l - 1]
    elif include_order != 2 * l - 1:
        raise DomainError(f"include_order must be {2 * l - 1} or {2 * l - 2}")
    return target


def higher_order_expansion_residual(cfg, f, bundle, l, include_order, tol=1e-13):
    """n^l (B_n f(x) - sum_{k <= include_order} f^{(k)}(x) T_{n,k}(x) / k!).

    B_n f is evaluated by quadrature, the moments by recursion.
    """
    l = _check_l(l)
    if include_order not in (2 * l - 1, 2 * l - 2):
        raise DomainError(f"include_order must be {2 * l - 1} or {2 * l - 2}")
    v = bundle.require(include_order)
    x = bundle.x
    T = moment_grid(cfg, np.array([x]), include_order)[0]
    taylor = sum(v[k] / math.factorial(k) * T[k] for k in range(include_order + 1))
    return cfg.n**l * (evaluate(cfg, f, x, tol) - taylor)


def richardson_extrapolate(ns, values):
    """Extrapolate a sequence a + b/n + c/n^2 + ... to n = infinity.

    Builds the Neville tableau in h = 1/n; the first column pair removes the
    1/n term, each further level the next power.
    """
    ns = np.asarray(ns, dtype=float)
    vals = np.asarray(values, dtype=float)
    if ns.shape != vals.shape or ns.ndim != 1:
        raise DomainError("ns and values must be 1-d and of equal length")
    if ns.size < 3:
        raise DomainError(f"need at least 3 points, got {ns.size}")
    if np.any(np.diff(ns) <= 0):
        raise DomainError("ns must be strictly increasing")
    h = 1.0 / ns
    col = vals.copy()
    for level in range(1, ns.size):
        col = (h[:-level] * col[1:] - h[level:] * col[:-1]) / (h[:-level] - h[level:])
    return float(col[0])


def convergence_report(ns, raw, target):
    return ConvergenceReport(
        tuple(int(n) for n in ns),
        tuple(float(r) for r in raw),
        richardson_extrapolate(ns, raw),
        float(target),
    )
