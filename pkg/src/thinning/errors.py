"""Exception types raised by the library."""


class ThinningError(Exception):
    """Base class for all library errors."""


class ParameterError(ThinningError, ValueError):
    """Invalid distribution or limit-law parameters."""


class DomainError(ThinningError, ValueError):
    """Argument outside the domain of an operation."""


class DegenerateThresholdError(DomainError):
    """Threshold at or above the upper support endpoint (F(u) = 1)."""


class SizeError(ThinningError, ValueError):
    """Problem size beyond the supported range."""


class UnsupportedLawError(ThinningError, NotImplementedError):
    """Operation has no recipe for the requested law."""


class InversionError(ThinningError, ArithmeticError):
    """Numerical CDF inversion did not reach its tolerance."""


class ResourceGuardError(ThinningError, RuntimeError):
    """Requested simulation exceeds the configured work budget."""
