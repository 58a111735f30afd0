"""Exception types shared across the package."""


class MDSplineError(Exception):
    """Base class for all package-specific errors."""


class SpaceValidationError(MDSplineError):
    """A space description violates the admissibility rules."""


class NumericalInconsistencyError(MDSplineError):
    """An internal quantity that must be positive (or finite) is not.

    Raised when a coefficient denominator is nonpositive, a derivative jump
    vanishes in the legacy path, or block overlaps disagree beyond tolerance.
    """


class UnsupportedSpaceError(MDSplineError):
    """The requested operation is not defined for this space."""
