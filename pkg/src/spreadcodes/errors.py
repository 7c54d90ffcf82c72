"""Exception types shared across the package."""


class DecodingError(Exception):
    """Base class for every refusal raised by a decoder."""


class UndecodableError(DecodingError):
    """The observation violates the decoder's preconditions."""


class UnderdeterminedError(DecodingError):
    """Too many erasures: the linear system has more than one solution."""


class InconsistentObservationError(DecodingError):
    """The observation is not consistent with any codeword."""


class DeletionsUnsupportedError(DecodingError):
    """Rank loss detected where the decoder only handles erasures."""


class SingularMatrixError(ArithmeticError):
    pass


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured work budget."""
