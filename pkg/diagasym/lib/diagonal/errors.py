"""diagonal.errors.

This module provides the errors raised by the diagonal toolkit.
"""


class DiagonalError(Exception):
    pass


class DomainError(DiagonalError):
    pass


class ResourceError(DiagonalError):
    pass


class ConsistencyError(DiagonalError):
    pass


class DegenerateFitError(DiagonalError):
    pass


class SingularLeadingCoefficientError(DiagonalError):
    def __init__(self, n):
        super().__init__('Leading coefficient p0 vanishes at n={}'.format(n))
        self.n = n


class DegenerateIndicialError(DiagonalError):
    pass


class CacheFormatError(DiagonalError):
    pass


class ConfigError(DiagonalError):
    pass
