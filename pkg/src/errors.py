"""
Exception hierarchy shared by the models, the engine and the CLI.
"""


class PoissonMotionError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(PoissonMotionError, ValueError):
    """A model or integrator parameter is outside its allowed range."""


class InvalidInputError(PoissonMotionError, ValueError):
    """A value object failed validation (det != 1, non-unitary, ...)."""


class OutsideDecomposableSetError(PoissonMotionError, ValueError):
    """The requested Manin-group factorization does not exist for this matrix."""


class OutsidePhaseSpaceError(PoissonMotionError, ValueError):
    """A phase point violates the admissibility condition of its model."""


class UndefinedIdentityError(PoissonMotionError, ValueError):
    """An identity or closed form is evaluated where it has a vanishing denominator."""


class TooFewSamplesError(PoissonMotionError, ValueError):
    """Not enough samples for a geometric fit."""


class NoConvergenceError(PoissonMotionError, RuntimeError):
    """An iterative inversion did not reach its tolerance."""


class MaxStepsExceededError(PoissonMotionError, RuntimeError):
    """An integration needed more steps than its configuration allows."""


class UnsupportedOperationError(PoissonMotionError, RuntimeError):
    """The model does not provide what the operation needs."""
