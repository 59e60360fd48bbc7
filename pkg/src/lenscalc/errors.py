"""Shared exception types with stable machine-readable codes.

The CLI maps these onto error JSON; library users can catch LenscalcError.
"""


class LenscalcError(Exception):
    code = "error"


class DegenerateInputError(LenscalcError):
    """Input is a degenerate configuration (e.g. the slope 0/0)."""

    code = "degenerate-input"


class PreconditionError(LenscalcError):
    """A documented operation precondition does not hold."""

    code = "precondition-failed"


class InvariantError(LenscalcError):
    """A value violates its type invariant (malformed path, bad decoration)."""

    code = "invariant-violated"


class UnsupportedConfigurationError(LenscalcError):
    """A move was requested in a configuration the calculus does not cover."""

    code = "unsupported-configuration"


class InternalConsistencyError(LenscalcError):
    """An identity that should hold unconditionally failed; indicates a bug."""

    code = "internal-consistency"
