"""Exception types shared across the package.

The CLI maps these onto exit codes: ``InputError`` -> 2, ``BudgetExceeded`` -> 3.
``ValidationError`` carries a witness and is reported as a false verdict (1).
"""


class IncidenceLabError(Exception):
    pass


class InputError(IncidenceLabError, ValueError):
    """Malformed input or a violated precondition."""


class ValidationError(IncidenceLabError):
    """A checked law failed; ``witness`` pinpoints the first violation."""

    def __init__(self, message, witness=None, condition=None):
        super().__init__(message)
        self.witness = witness
        self.condition = condition


class BudgetExceeded(IncidenceLabError):
    """An enumeration would exceed the configured work budget."""
