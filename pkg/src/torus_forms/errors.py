"""Exception types shared across the library."""


class TorusFormsError(Exception):
    """Base class for all library errors."""


class NotAUnit(TorusFormsError):
    """Raised when an element of Z[t, t^-1] has no multiplicative inverse."""


class DimensionMismatch(TorusFormsError):
    """Vector or matrix sizes are incompatible."""


class BadParameters(TorusFormsError):
    """Invalid arguments to a constructor (rank, genus, name, ...)."""


class SingularForm(TorusFormsError):
    """A bilinear form required to be nonsingular is not."""


class SearchExhausted(TorusFormsError):
    """A bounded witness search ended without finding a witness.

    This is not a disproof: the searched region was simply too small.
    """


class OutOfRange(TorusFormsError):
    """A degree/index parameter lies outside the validity range."""


class UnknownGroup(TorusFormsError):
    """A homotopy group was requested beyond the curated lookup tables."""


class NotWellDefined(TorusFormsError):
    """A map does not descend to the requested quotient."""


class WindowOverflow(TorusFormsError):
    """A group-ring action left the truncated exponent window."""


class WrongParity(TorusFormsError):
    """A sign/parity precondition is violated."""


class UsageError(TorusFormsError):
    """Bad command-line usage; carries the message shown to the user."""
