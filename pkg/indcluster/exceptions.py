# Base exception
class IndClusterError(Exception):
    pass


# Laurent errors
class LaurentError(IndClusterError):
    pass


class NotDivisibleError(LaurentError):
    pass


class DivisionByZeroError(LaurentError, ZeroDivisionError):
    pass


class ZeroToNegativePowerError(LaurentError, ZeroDivisionError):
    pass


class UnknownVariableError(LaurentError, KeyError):
    pass


# Seed errors
class SeedError(IndClusterError):
    pass


class InvalidSeedError(SeedError):
    pass


class NotExchangeableError(SeedError):

    def __init__(self, message: str = '', step=None):
        super().__init__(message)
        self.step = step


class WindowBoundaryError(NotExchangeableError):
    pass


class NotSkewSymmetricError(SeedError):
    pass


class SearchTooLargeError(SeedError):
    pass


# Ind-colimit errors
class IndColimitError(IndClusterError):
    pass


class IndexOutOfRangeError(IndColimitError, IndexError):
    pass


class UnstableWindowError(IndColimitError):

    def __init__(self, message: str = '', pair=None):
        super().__init__(message)
        self.pair = pair


class LiftFailedError(IndColimitError):
    pass


# Grassmannian errors
class GrassmannError(IndClusterError):
    pass


class DoesNotFitBoxError(GrassmannError):
    pass


class BoxShrinksError(GrassmannError):
    pass


class NotQuadrilateralError(GrassmannError):
    pass


class SearchExhaustedError(GrassmannError):
    pass


class OracleMismatchError(GrassmannError):
    pass


# Schur and tau errors
class SchurError(IndClusterError):
    pass


class SizeMismatchError(SchurError):
    pass


class InvalidPointError(SchurError):
    pass


class RankDeficientError(SchurError):
    pass


class TruncationUnstableError(SchurError):
    pass


class EmptyCoordinateZeroError(SchurError):
    pass


class NonPositiveInputError(SchurError):
    pass
