"""Exception types raised across the package."""


class HanoiWalkError(Exception):
    """Base class for all package errors."""


class DomainError(HanoiWalkError, ValueError):
    """A parameter lies outside its admissible domain."""


class NoDecompositionError(DomainError):
    """Vertex 0 has no hierarchy decomposition."""


class ConfigurationError(HanoiWalkError, ValueError):
    """An operation was called with an incomplete or inconsistent setup."""


class InsufficientDataError(HanoiWalkError, ValueError):
    """Too few usable records to perform a fit or optimisation."""


class OracleSizeError(DomainError):
    """Dense reference requested for a network too large to materialise."""
