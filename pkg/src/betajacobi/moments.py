"""Central moments T_{n,m}(x) = B_n((e_1 - x)^m; x) of the Beta-Jacobi operators."""
from dataclasses import dataclass
import enum
import math

import numpy as np

from . import kernels
from .errors import DomainError
from .operator import OperatorConfig, evaluate
from .special import rising_factorial

CONSTANT_SNAP = 1e-12


@dataclass(frozen=True)
class MomentTable:
    cfg: OperatorConfig
    x: float
    values: np.ndarray

    @property
    def m_max(self):
        return self.values.shape[0] - 1

    def __getitem__(self, m):
        return float(self.values[m])


def _check_x(x):
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    return x


def first_moment(cfg, x):
    x = _check_x(x)
    ab2 = cfg.alpha + cfg.beta + 2.0
    return (cfg.alpha + 1.0 - ab2 * x) / (cfg.n + ab2)


def moment_grid(cfg, xs, m_max):
    """Moments 0..m_max for every x in ``xs``; shape (len(xs), m_max + 1)."""
    xs = np.ascontiguousarray(np.atleast_1d(xs), dtype=float)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise DomainError("x values must lie in [0, 1]")
    if int(m_max) != m_max or m_max < 0:
        raise DomainError(f"m_max must be a nonnegative integer, got {m_max!r}")
    return kernels.moment_table(float(cfg.n), cfg.alpha, cfg.beta, xs, int(m_max))


def moments_recursive(cfg, x, m_max):
    """Moments up to ``m_max`` from the three-term recursion in m, seeded by
    T_0 = 1 and the closed-form first moment."""
    x = _check_x(x)
    values = moment_grid(cfg, np.array([x]), m_max)[0]
    values.setflags(write=False)
    return MomentTable(cfg, x, values)


def second_moment_closed(cfg, x):
    x = _check_x(x)
    a, b, n = cfg.alpha, cfg.beta, cfg.n
    s = a + b
    num = (a + 1) * (a + 2) + (n - 2 * (a + 1) * (s + 3)) * x + (-n + 6 + s * (s + 5)) * x * x
    return num / ((n + s + 2) * (n + s + 3))


def _poly_power(coeffs, power):
    out = np.ones(1)
    for _ in range(power):
        out = np.convolve(out, coeffs)
    return out


def shift_taylor_coefficients(i, j, x):
    """[x^i (1-x)^j]^{(k)} / k! for k = 0..i+j.

    These are the Taylor coefficients of t^i (1-t)^j about x, obtained by
    expanding the polynomial in u = t - x exactly.
    """
    # t = x + u, 1 - t = (1 - x) - u
    p = np.convolve(_poly_power(np.array([x, 1.0]), i), _poly_power(np.array([1.0 - x, -1.0]), j))
    return p


def parameter_shift_moment(cfg, i, j, x, m, base_table):
    """T_{n,m} at parameters (alpha + i, beta + j) from the moments at (alpha, beta).

    Uses the Taylor expansion of t^i (1-t)^j about x and the Beta shift of the
    normalizer, whose j-part is (n - nx + beta + 1)^{j̄}.
    """
    if min(i, j, m) < 0:
        raise DomainError("i, j and m must be nonnegative")
    if base_table.m_max < m + i + j:
        raise DomainError(f"base table needs order >= {m + i + j}, has {base_table.m_max}")
    x = base_table.x
    n, a, b = cfg.n, cfg.alpha, cfg.beta
    left = n * x + a + 1.0
    right = n - n * x + b + 1.0
    if (i > 0 and abs(left) <= 1e-12) or (j > 0 and abs(right) <= 1e-12):
        raise DomainError(
            f"singular parameter shift at x={x!r}: nx+alpha+1={left!r}, n-nx+beta+1={right!r}"
        )
    factor = rising_factorial(n + a + b + 2.0, i + j) / (
        rising_factorial(left, i) * rising_factorial(right, j)
    )
    taylor = shift_taylor_coefficients(i, j, x)
    total = float(np.dot(taylor, base_table.values[m : m + i + j + 1]))
    return factor * total


class ProfileShape(enum.Enum):
    ENDPOINT_FAVORED = "endpoint_favored"
    CONSTANT = "constant"
    CENTER_FAVORED = "center_favored"


@dataclass(frozen=True)
class SecondMomentProfile:
    n: int
    alpha: float
    critical_alpha: float
    shape: ProfileShape
    endpoint_value: float
    midpoint_value: float

    def value(self, x):
        """T_{n,2}^{alpha,alpha}(x)."""
        a, n = self.alpha, self.n
        X = np.asarray(x) * (1 - np.asarray(x))
        return ((a + 1) * (a + 2) - (-n + 6 + 2 * a * (2 * a + 5)) * X) / (
            (n + 2 * a + 2) * (n + 2 * a + 3)
        )


def critical_alpha(n):
    return (math.sqrt(4 * n + 1) - 5) / 4


def symmetric_profile(n, alpha):
    """Shape of the symmetric second moment x -> T_{n,2}^{alpha,alpha}(x).

    Below the critical parameter (sqrt(4n+1) - 5) / 4 the moment is smaller at
    the endpoints than at 1/2, above it the reverse, and at it the moment is
    constant.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    alpha = OperatorConfig.make(n, alpha, alpha).alpha
    s_n = critical_alpha(n)
    coeff = n - 6 - 2 * alpha * (2 * alpha + 5)  # coefficient of x(1-x) in the numerator
    if abs(alpha - s_n) <= CONSTANT_SNAP:
        shape = ProfileShape.CONSTANT
    elif coeff > 0:
        shape = ProfileShape.ENDPOINT_FAVORED
    else:
        shape = ProfileShape.CENTER_FAVORED
    endpoint = (alpha + 1) * (alpha + 2) / ((n + 2 * alpha + 2) * (n + 2 * alpha + 3))
    midpoint = 1.0 / (4 * (n + 2 * alpha + 3))
    return SecondMomentProfile(int(n), alpha, s_n, shape, endpoint, midpoint)


def constant_profile_value(n):
    """Value of the constant second moment at alpha = beta = critical_alpha(n)."""
    return ((math.sqrt(4 * n + 1) - 1) / (4 * n)) ** 2


class Direction(enum.Enum):
    ALPHA = "alpha"
    BETA = "beta"


def large_parameter_limit_check(n, x, direction, values, other=0.0):
    """|T_{n,2}(x) - limit| as alpha (or beta) runs through ``values``.

    The limits are (1-x)^2 for growing alpha and x^2 for growing beta; the
    other parameter is held at ``other``. Closed form only: quadrature is
    badly conditioned at these exponents.
    """
    direction = Direction(direction)
    x = _check_x(x)
    values = [float(v) for v in values]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise DomainError("parameter values must be strictly increasing")
    limit = (1 - x) ** 2 if direction is Direction.ALPHA else x * x
    out = []
    for v in values:
        a, b = (v, other) if direction is Direction.ALPHA else (other, v)
        out.append(abs(second_moment_closed(OperatorConfig.make(n, a, b), x) - limit))
    return out


def moment_oracle(cfg, x, m, tol=1e-12):
    """T_{n,m}(x) straight from the operator definition, by quadrature."""
    x = _check_x(x)
    if int(m) != m or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    m = int(m)
    return evaluate(cfg, lambda t: (np.asarray(t) - x) ** m, x, tol)
