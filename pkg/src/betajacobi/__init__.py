"""Beta operators with Jacobi weights on C[0, 1]: evaluation, moments,
asymptotics and iterates."""
__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import (
    BetaJacobiError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    ToleranceError,
)
from .operator import (
    CaseTag,
    JacobiParams,
    OperatorConfig,
    OperatorMatrix,
    Polynomial,
    classify,
    evaluate,
    evaluate_grid,
    monomial_image,
    operator_matrix,
)
from .quadrature import QuadratureRule, adaptive_check, expectation, gauss_jacobi_rule
from .moments import (
    MomentTable,
    first_moment,
    moment_grid,
    moment_oracle,
    moments_recursive,
    second_moment_closed,
    symmetric_profile,
)
from .asymptotics import (
    DerivativeBundle,
    even_moment_limit,
    odd_moment_limit,
    richardson_extrapolate,
    second_order_voronovskaya_limit,
    voronovskaya_limit,
)
from .iterates import (
    boundary_iterate_limit,
    eigenvalue,
    iterate_limit,
    iterate_polynomial,
    limit_functional,
    limit_measure_moment,
    mu_moments,
    symmetric_sums,
)
