"""
errors.py

Exception hierarchy for pylie. Every class also derives from the built-in
exception a caller would naturally catch, so `except ValueError` keeps working
around precondition failures.
"""


class PylieError(Exception):
    """Root of all pylie errors."""


class InputError(PylieError, ValueError):
    """A precondition on the arguments was violated."""


class CatalogParseError(InputError):
    """Malformed orbit catalog text."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class UnsupportedError(PylieError, NotImplementedError):
    """The input is well formed but outside what the library handles."""


class DataIntegrityError(PylieError):
    """Stored orbit data disagrees with what is recomputed from it."""

    def __init__(self, orbit, message):
        self.orbit = orbit
        super().__init__(f"{orbit}: {message}")


class PropertyViolation(PylieError, AssertionError):
    """An identity that must hold by construction failed."""
