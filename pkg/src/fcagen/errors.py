"""Exception types raised across the package."""


class FcaError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(FcaError, ValueError):
    """A bit set does not match the width of the context it is used with."""


class DuplicateNameError(FcaError, ValueError):
    """An object or attribute label would collide with an existing one."""


class UnknownNameError(FcaError, LookupError):
    """An object or attribute label is not present in the context."""


class ParameterError(FcaError, ValueError):
    """A numeric or structural parameter is out of its legal range."""


class SchemeError(FcaError, ValueError):
    """A generalization scheme is not a valid partition of the attributes."""


class ContractError(FcaError, ValueError):
    """A documented precondition of an operation was violated by the caller."""


class CapacityError(FcaError, RuntimeError):
    """An enumeration would exceed the configured resource guard."""


class VerificationError(FcaError, RuntimeError):
    """A counting identity that is cross-checked by enumeration failed."""


class ParseError(FcaError, ValueError):
    """Malformed input file.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
