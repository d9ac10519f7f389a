"""Exception types shared across the library."""


class CircrootsError(Exception):
    """Base class for library-specific failures."""


class DomainError(CircrootsError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SizeError(CircrootsError, ValueError):
    """Requested object exceeds a documented size cap."""


class ConfigError(CircrootsError, ValueError):
    """Invalid experiment or CLI configuration."""


class CertificationError(CircrootsError, ValueError):
    """Grid too coarse to certify the requested bound."""


class ResolutionError(CircrootsError, RuntimeError):
    """Requested grid resolution exceeds the memory cap."""


class InsufficientDataError(CircrootsError, RuntimeError):
    """Too few usable data points for a fit."""


class NumericalError(CircrootsError, RuntimeError):
    """Iterative numerical procedure failed to converge."""


class UnsupportedError(CircrootsError, RuntimeError):
    """Input combination outside the supported fallback paths."""
