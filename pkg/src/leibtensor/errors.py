"""Exception types raised by the library."""


class AlgebraError(Exception):
    """Base class for every error raised by leibtensor."""


class DimMismatch(AlgebraError, ValueError):
    pass


class AmbientMismatch(AlgebraError, ValueError):
    pass


class NotContained(AlgebraError, ValueError):
    pass


class NotInvertible(AlgebraError, ValueError):
    pass


class CheckFailure(AlgebraError):
    """A precondition verified by an identity check did not hold.

    The failing report is kept on ``self.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAnIdeal(CheckFailure):
    pass


class NotSquareZero(CheckFailure):
    pass


class NotADerivation(CheckFailure):
    pass


class NotAMorphism(CheckFailure):
    pass


class IdealClosureFailure(CheckFailure):
    pass


class RepresentativeDependence(CheckFailure):
    """Induced action on a quotient depends on the chosen representative."""


class NotAnEmbeddingTensor(CheckFailure):
    pass


class NotAnAction(CheckFailure):
    pass


class NotHomomorphicET(CheckFailure):
    pass


class NotANijenhuisElement(CheckFailure):
    pass


class IntertwiningFailure(CheckFailure):
    pass


class InputError(AlgebraError):
    """Problems with on-disk input."""


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


class IndexOutOfRange(InputError):
    pass
