class CayleyGapError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatchError(CayleyGapError, ValueError):
    pass


class CapExceededError(CayleyGapError):
    """A brute-force computation was requested beyond its size cap."""


class VerificationError(CayleyGapError):
    """A claimed identity or inequality failed beyond tolerance."""
