"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates an operation's precondition."""


class DegenerateFormError(ValueError):
    """A Gram matrix is singular."""


class UnsupportedBaseError(ValueError):
    """The requested base field has no implemented GW model."""


class PreconditionError(ValueError):
    """An object lacks a structural property the operation needs (e.g. Galois)."""
