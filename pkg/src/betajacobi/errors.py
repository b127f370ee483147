class BetaJacobiError(Exception):
    pass


class DomainError(BetaJacobiError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(BetaJacobiError, ArithmeticError):
    """An iterative kernel did not converge."""


class EvaluationError(BetaJacobiError, ArithmeticError):
    """A user function produced a non-finite value."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class ToleranceError(BetaJacobiError, ArithmeticError):
    """Requested accuracy could not be certified.

    ``value`` and ``estimate`` carry the best value reached and its error
    estimate.
    """

    def __init__(self, message, value, estimate):
        super().__init__(message)
        self.value = value
        self.estimate = estimate
