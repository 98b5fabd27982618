"""Exception types raised across the package.

All of them derive from ``ValueError`` so callers validating user input can
catch a single type.
"""


class MacqError(ValueError):
    """Base class for every error signalled by this package."""


class NonDivisibleError(MacqError):
    """No polynomial quotient exists for an exact division."""


class NonIntegralError(MacqError):
    """A rational intermediate failed to clear to integer coefficients."""


class SizeMismatchError(MacqError):
    pass


class DegreeMismatchError(MacqError):
    pass


class BoxOutsideError(MacqError):
    pass


class NotStandardError(MacqError):
    pass


class DisconnectedError(MacqError):
    """Parking and sandpile enumeration need a connected graph."""
