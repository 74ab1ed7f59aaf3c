class QAuditError(Exception):
    """Base class for every error raised by the audit kernel"""


class PolynomialError(QAuditError, ZeroDivisionError):
    """Illegal polynomial operation (gcd of zeros, zero denominator)"""


class PoleError(QAuditError, ZeroDivisionError):
    """Rational function evaluated at a root of its denominator"""


class SeriesError(QAuditError):
    """Illegal operation on a truncated multivariate series"""


class UndefinedSeriesError(SeriesError):
    """A denominator Pochhammer symbol vanishes inside the summation range"""

    def __init__(self, message: str, symbol: str = "", index: int = -1):
        super().__init__(message)
        self.symbol = symbol
        self.index = index


class UsageError(QAuditError):
    """Bad request from a caller: unknown identity, order too small, malformed input"""
