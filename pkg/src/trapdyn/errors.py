"""Exception taxonomy used across the package.

``ArgumentError`` flags bad call parameters, ``ValidationError`` flags data
that breaks a declared invariant.  Both derive from ``ValueError`` so that
generic callers can catch them uniformly; the batch front end maps them to
distinct exit codes.
"""


class ArgumentError(ValueError):
    """A call parameter is outside its documented domain."""


class ValidationError(ValueError):
    """Input data violates a structural invariant."""


class ResourceError(ArgumentError):
    """A parameter is legal in principle but exceeds the memory budget."""


class SingularityError(ArgumentError):
    """A principal-value evaluation point collides with an atom."""

    def __init__(self, message: str, atom_index: int):
        super().__init__(message)
        self.atom_index = atom_index


class InvalidMomentsError(ValidationError):
    """A moment sequence is not realizable by any probability measure."""


class ToleranceError(RuntimeError):
    """A cross-route comparison exceeded its agreement tolerance."""
