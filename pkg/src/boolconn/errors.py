"""Exception types shared across the package."""
from __future__ import annotations


class BoolConnError(Exception):
    """Base class for all library errors."""


class InputError(BoolConnError, ValueError):
    """Malformed input: bad file syntax, out-of-range index, unknown name."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class CapExceeded(BoolConnError):
    """A configured size limit would be exceeded."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds cap {cap}")


class PreconditionError(BoolConnError):
    """The input is well formed but outside the class an algorithm handles."""


class MethodInapplicable(PreconditionError):
    """A constraint relation does not fit the requested SAT method."""
