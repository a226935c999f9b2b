"""Exception hierarchy shared by all solver modules."""


class PiezoDampError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PiezoDampError):
    """A physical or numerical input violates its documented invariant.

    ``field`` names the offending quantity so CLI diagnostics can point at it.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class AlignmentError(ValidationError):
    """A time or position does not land on the exact simulation grid.

    The solver refuses to interpolate: delayed reads must be integer index
    shifts, otherwise the method loses its exactness guarantee.
    """


class UnsupportedCaseError(PiezoDampError):
    """The closed-form branch formulas do not cover this load duration."""


class ConvergenceError(PiezoDampError):
    """Internal error: the safeguarded root-finder exhausted its budget."""
