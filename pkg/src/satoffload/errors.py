"""Exception types shared across the library."""


class SatOffloadError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SatOffloadError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NonConvergence(SatOffloadError, RuntimeError):
    """An iterative scheme hit its cap before reaching tolerance."""


class OutOfRange(SatOffloadError, ValueError):
    """Timeline query outside the covered time span."""


class NoExactMatch(SatOffloadError, LookupError):
    """Timeline query in exact-match mode with no matching entry."""


class NoBracket(SatOffloadError, RuntimeError):
    """Root bracket does not contain a sign change."""


class Infeasible(SatOffloadError, RuntimeError):
    """Planning problem has no solution under the given constraints."""


class ConfigError(SatOffloadError, ValueError):
    """Malformed or inconsistent configuration input."""
