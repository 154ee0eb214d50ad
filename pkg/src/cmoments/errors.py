"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """Requested order exceeds a combinatorial size guard."""


class DomainError(ValueError):
    """Evaluation point lies outside an operation's domain of validity."""


class PoleError(DomainError):
    """Evaluation point collides with an atom, a support or a contour."""


class DivergenceError(DomainError):
    """Series evaluation requested inside (or too close to) its divergence region."""


class QuadratureError(RuntimeError):
    """Quadrature did not reach the requested accuracy.

    The estimate that was actually achieved is kept in ``achieved``.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class MeasureFormatError(ValueError):
    """Measure spec file is malformed (unknown/missing keys or bad shapes)."""
