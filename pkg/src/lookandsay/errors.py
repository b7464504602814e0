"""Exception types shared by every module in the package."""


class LnsError(Exception):
    """Base class for every domain error this package raises."""


class EmptyInput(LnsError):
    pass


class InvalidDigit(LnsError):
    pass


class ZeroDigit(InvalidDigit):
    """'0' is not a valid digit anywhere in this system."""


class MalformedRle(LnsError):
    pass


class RunOverflow(LnsError):
    """A run longer than 9 digits has no single-digit count."""


class LengthBudgetExceeded(LnsError):
    pass


class OddLength(LnsError):
    pass


class ClosureBudgetExceeded(LnsError):
    pass


class NonConvergence(LnsError):
    pass


class UniverseExhausted(LnsError):
    pass


class FormatError(LnsError):
    """A file on disk does not match its declared layout."""


class LineCountMismatch(LnsError):
    pass


class MissingPrediction(LnsError):
    pass


class DuplicatePrediction(LnsError):
    pass


class EmptyEvaluation(LnsError):
    pass
