"""Exception hierarchy.

Every error raised on bad input derives from :class:`InputError`; the CLI maps
those to exit code 3 and :class:`ResourceLimitError` to exit code 4.
"""


class OmegaError(Exception):
    """Base class for all library errors."""


class InputError(OmegaError, ValueError):
    """The arguments violate a documented precondition."""


class DimensionError(InputError):
    pass


class SingularMatrixError(InputError):
    pass


class InvalidForm(InputError):
    """The matrix does not define a symplectic form."""


class OddDimension(InvalidForm):
    pass


class NotSkewSymmetric(InvalidForm):
    pass


class Degenerate(InvalidForm):
    pass


class NotSymmetric(InputError):
    pass


class NotHamiltonian(InputError):
    """A matrix or vector field is not ω-Hamiltonian where one is required."""

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class NotInOmegaN(InputError):
    pass


class UnreachableLambda(InputError):
    pass


class NotLambdaSymplectic(InputError):
    pass


class JacobianNotSymmetric(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class ConstantPartPresent(InputError):
    pass


class JetConditionViolated(InputError):
    pass


class SchemaError(InputError):
    """Malformed JSON document."""


class ResourceLimitError(OmegaError):
    """Input exceeds the configured degree or variable caps."""


class NonFiniteState(OmegaError, ArithmeticError):
    """A numerical trajectory left the finite floating-point range."""


class InternalError(OmegaError, RuntimeError):
    """An identity that must hold by construction failed."""
