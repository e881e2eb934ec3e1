"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class KDarbouxError(Exception):
    """Base class for every error raised by the package."""


class ConfigurationError(KDarbouxError):
    """Unsupported root datum, bad index, malformed selector."""


class DomainError(KDarbouxError, ValueError):
    """An argument lies outside the domain of an operation."""


class DatumMismatchError(DomainError):
    """Operands were built over different root data or ranks."""


class DivisibilityError(DomainError):
    """Exact division failed.  ``remainder`` carries the witness."""

    def __init__(self, message: str, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class IntegralityError(DomainError):
    """An operator value that must be a Laurent polynomial kept a denominator."""


class UnsupportedClassError(DomainError):
    """A K-class outside the span an operation knows how to handle."""


class UnstableError(KDarbouxError):
    """The semi-infinite order did not stabilise inside the search window."""


class BoundError(KDarbouxError):
    """A support box is too small for the requested computation."""
