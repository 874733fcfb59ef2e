"""Exception types shared across the library.

The CLI maps these onto distinct exit codes, so keep the hierarchy flat and
stable: everything a caller passes in wrong is a ValidationError, everything
wrong with an input *file* is a ParseError, and data that carry no
information for the requested test raise DegenerateDataError.
"""


class ValidationError(ValueError):
    """An argument fails a structural or range requirement."""


class UnknownNameError(ValidationError):
    """An algorithm or dataset identifier is not present in the matrix."""


class ParseError(ValueError):
    """A table file could not be parsed; message carries row/column location."""


class DegenerateDataError(ValueError):
    """The requested test is undefined on these data (e.g. every paired
    difference is zero, so there is nothing to rank or count)."""


class ExactLimitError(ValueError):
    """Sample size exceeds the exact-distribution limit; callers should fall
    back to the normal approximation instead of asking for the exact table."""
