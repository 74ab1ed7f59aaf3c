from .config import RunConfig, Settings, get_settings, parse_rational, reset_settings
from .errors import (
    PoleError,
    PolynomialError,
    QAuditError,
    SeriesError,
    UndefinedSeriesError,
    UsageError,
)

__all__ = [
    'RunConfig',
    'Settings',
    'get_settings',
    'parse_rational',
    'reset_settings',
    'QAuditError',
    'PolynomialError',
    'PoleError',
    'SeriesError',
    'UndefinedSeriesError',
    'UsageError',
]
