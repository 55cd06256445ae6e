"""Exception types raised across seqlab."""


class SeqlabError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(SeqlabError, ValueError):
    pass


class NotGenerator(SeqlabError, ValueError):
    pass


class LogOfZero(SeqlabError, ValueError):
    pass


class DivisionByZero(SeqlabError, ZeroDivisionError):
    pass


class ScaleByZero(SeqlabError, ValueError):
    pass


class PeriodMismatch(SeqlabError, ValueError):
    pass


class PTooSmall(SeqlabError, ValueError):
    pass


class IndexOutOfRange(SeqlabError, IndexError):
    pass


class InvalidMatrix(SeqlabError, ValueError):
    pass


class FieldMismatch(SeqlabError, ValueError):
    pass


class UnsupportedFamily(SeqlabError, ValueError):
    pass
