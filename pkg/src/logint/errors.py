"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class NonConvergenceError(RuntimeError):
    """A quadrature result was required to converge but did not."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
