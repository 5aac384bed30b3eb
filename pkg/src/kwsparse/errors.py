"""Exception hierarchy shared by every kwsparse module."""


class KwsparseError(Exception):
    """Base class for all library errors."""


class ParseError(KwsparseError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class NonPositiveWeight(ParseError):
    pass


class IndexOutOfRange(KwsparseError, IndexError):
    pass


class OutOfRange(KwsparseError, ValueError):
    """A numeric parameter lies outside its admissible range."""


class LengthMismatch(KwsparseError, ValueError):
    pass


class EmptyGraph(KwsparseError, ValueError):
    pass


class Disconnected(KwsparseError, ValueError):
    pass


class NoConvergence(KwsparseError, ArithmeticError):
    pass


class NotPSD(KwsparseError, ValueError):
    pass


class KernelMismatch(KwsparseError, ValueError):
    """Two PSD matrices have different null spaces, so no eps relates them."""


class SeedOutOfRange(KwsparseError, IndexError):
    pass


class EnumerationOverflow(KwsparseError, OverflowError):
    pass


class TooLarge(KwsparseError, ValueError):
    """An exhaustive enumeration would exceed its configured size limit."""


class ZeroProbabilityEdge(KwsparseError, ValueError):
    pass


class InsufficientCoins(KwsparseError, ValueError):
    pass


class ExhaustedSeeds(KwsparseError):
    """No seed was accepted within the enumeration budget.

    ``best`` holds the most promising :class:`CandidateReport` seen, if any.
    """

    def __init__(self, message, best=None, tried=0):
        super().__init__(message)
        self.best = best
        self.tried = tried
