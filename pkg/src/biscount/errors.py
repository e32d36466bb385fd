"""Exception hierarchy shared by every module."""


class BiscountError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(BiscountError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardExceeded(BiscountError):
    """A brute-force oracle was asked to enumerate beyond its configured guard."""


class CapExceeded(BiscountError):
    """A pattern is larger than the configured pattern-size cap."""


class DegreeBoundError(BiscountError, ValueError):
    pass


class SingularMatrixError(BiscountError, ArithmeticError):
    pass


class BudgetExceeded(BiscountError):
    """Sample count or instance size is above the configured budget."""
