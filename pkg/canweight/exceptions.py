"""Custom exceptions for canweight."""


class CanweightError(Exception):
    """Base exception for canweight errors."""

    def __init__(self, message: str, cause: Exception | None = None):
        super().__init__(message)
        self.cause = cause


class ConfigurationError(CanweightError):
    """Raised when configuration is invalid or missing."""

    pass


class InputError(CanweightError):
    """Raised when a polynomial, weight or family input cannot be read."""

    pass


class PolynomialSyntaxError(InputError):
    """Raised when polynomial text does not follow the grammar."""

    def __init__(self, message: str, position: int, cause: Exception | None = None):
        super().__init__(f"{message} (at position {position})", cause)
        self.position = position


class DimensionMismatchError(InputError):
    """Raised when vectors or supports of different ambient dimension meet."""

    def __init__(self, expected: int, actual: int, cause: Exception | None = None):
        message = f"Dimension mismatch: expected {expected}, got {actual}."
        super().__init__(message, cause)
        self.expected = expected
        self.actual = actual


class ExponentLimitError(InputError):
    """Raised when an exponent exceeds the configured limit."""

    def __init__(self, exponent: int, limit: int, cause: Exception | None = None):
        message = f"Exponent {exponent} exceeds the configured limit {limit}."
        super().__init__(message, cause)
        self.exponent = exponent
        self.limit = limit


class MalformedWeightError(InputError):
    """Raised when a weight vector given on the command line cannot be parsed."""

    def __init__(self, text: str, cause: Exception | None = None):
        message = f"Malformed weight '{text}'. Expected comma separated integers, e.g. 2,1,2,1"
        super().__init__(message, cause)
        self.text = text


class DomainError(CanweightError):
    """Raised when an operation is called outside its domain.

    Examples are the zero vector where a ray is needed, a weight with a
    non-positive entry used as a blow-up center, or an empty list.
    """

    pass


class NonPointedConeError(CanweightError):
    """Raised when a pointed cone is required but the cone contains a line."""

    def __init__(self, message: str | None = None, cause: Exception | None = None):
        default_msg = "The cone is not pointed (it contains a line)."
        super().__init__(message or default_msg, cause)


class EnumerationLimitError(CanweightError):
    """Raised when a lattice enumeration would scan more cells than allowed."""

    def __init__(self, cells: int, limit: int, cause: Exception | None = None):
        message = (
            f"Enumeration needs {cells} cells, above the limit of {limit}. "
            "Raise CANWEIGHT_MAX_CELLS to allow it."
        )
        super().__init__(message, cause)
        self.cells = cells
        self.limit = limit


class InvariantViolationError(CanweightError):
    """Raised when an exact self-check fails."""

    pass
