"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to, so the command layer never
needs a lookup table of its own.
"""


class ToeplitzError(Exception):
    exit_code = 1


class SpecError(ToeplitzError, ValueError):
    """Malformed or inconsistent coding data."""

    exit_code = 2


class ArgError(ToeplitzError, ValueError):
    exit_code = 2


class PotentialError(ToeplitzError, ValueError):
    exit_code = 2


class DepthError(ToeplitzError):
    """A request needs more levels than the spec provides."""

    exit_code = 3


class BudgetError(ToeplitzError):
    """Materialising a word would exceed the configured byte budget."""

    exit_code = 3


class RangeError(ToeplitzError, IndexError):
    exit_code = 3


class BoundExceeded(ToeplitzError):
    """A bounded search ran out of room; ``lower_bound`` is what was proven."""

    exit_code = 3

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class UndecidableError(ToeplitzError):
    """An asymptotic question was asked of data that cannot settle it."""

    exit_code = 3


class ExtendedWordError(ToeplitzError):
    """A window contains the permanent hole and no fill letter was given."""

    exit_code = 2


class PatternError(ToeplitzError):
    exit_code = 4


class VerificationError(ToeplitzError):
    exit_code = 4
