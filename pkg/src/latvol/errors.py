"""Error taxonomy shared by the library and the CLI exit-code contract."""


class LatvolError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class PreconditionError(LatvolError):
    """An argument violates a documented precondition (CLI exit 3)."""

    exit_code = 3


class BudgetExceededError(LatvolError):
    """An enumeration or grid exceeded its computational budget (CLI exit 4)."""

    exit_code = 4


class InvariantError(LatvolError):
    """An internal invariant failed, e.g. a cross-count mismatch (CLI exit 5)."""

    exit_code = 5
