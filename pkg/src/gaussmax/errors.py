"""Exception hierarchy shared by all modules."""


class GaussMaxError(Exception):
    """Base class for every error raised by this package."""


class InvalidCorrelationMatrix(GaussMaxError, ValueError):
    pass


class NonUnitDiagonal(InvalidCorrelationMatrix):
    pass


class Asymmetric(InvalidCorrelationMatrix):
    pass


class OutOfRangeEntry(InvalidCorrelationMatrix):
    pass


class NotPositiveSemidefinite(InvalidCorrelationMatrix):
    pass


class NotPositiveDefinite(InvalidCorrelationMatrix):
    pass


class DomainError(GaussMaxError, ValueError):
    """An argument lies outside the range where a formula is implemented."""


class EllOutOfRange(DomainError):
    pass


class RhoOutOfRange(DomainError):
    pass


class UnsupportedDimension(DomainError):
    pass


class IndexOutOfRange(DomainError):
    pass


class DuplicateIndex(DomainError):
    pass


class InvalidArgument(DomainError):
    pass


class InvalidSpec(DomainError):
    pass


class NoInteriorMaximum(DomainError):
    pass


class DegenerateCorrelation(GaussMaxError, ArithmeticError):
    """A correlation of magnitude one makes a formula singular."""


class DegenerateDifference(DegenerateCorrelation):
    pass


class DegenerateConditioning(DegenerateCorrelation):
    pass


class NonpositiveRadicand(DegenerateCorrelation):
    pass


class QuadratureFailure(GaussMaxError, RuntimeError):
    pass
