"""Exception types raised by the library."""


class RoughDMError(Exception):
    """Base class for all library errors."""


class UniverseMismatch(RoughDMError, ValueError):
    """Operands live on different universes (or a mask has stray bits)."""


class PreconditionError(RoughDMError, ValueError):
    """An argument violates a documented precondition."""


class NotAnEquivalence(PreconditionError):
    pass


class CapExceeded(RoughDMError):
    """An enumeration would exceed a configured size cap."""

    def __init__(self, cap_name, cap, actual):
        self.cap_name = cap_name
        self.cap = cap
        self.actual = actual
        super().__init__(f"{cap_name} cap exceeded: {actual} > {cap}")


class TheoremViolation(RoughDMError):
    """Two routes that must agree did not; carries a replayable witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
