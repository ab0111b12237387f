"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


class NegativeWeightError(DomainError):
    pass


class NonIncreasingWeightsError(DomainError):
    pass


class IterationError(RuntimeError):
    """Power iteration did not reach its tolerance."""

    def __init__(self, message, residual, iterations):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class TieError(RuntimeError):
    """The two smallest radii are too close to call a strict minimizer."""

    def __init__(self, message, classes, radii):
        super().__init__(message)
        self.classes = classes
        self.radii = radii


class SoundnessError(RuntimeError):
    """An analytic verdict contradicted the brute-force ordering."""
