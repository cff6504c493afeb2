"""Exception hierarchy shared by every module."""


class InsdelCodesError(Exception):
    pass


class FieldError(InsdelCodesError, ValueError):
    """Invalid field parameters or an arithmetic error such as division by zero."""


class MixedFieldError(FieldError):
    pass


class CodeError(InsdelCodesError, ValueError):
    """Invalid code construction or an operation whose preconditions do not hold."""


class BudgetExceeded(InsdelCodesError, RuntimeError):
    """An exhaustive operation would exceed its declared enumeration budget."""


class InvariantViolation(InsdelCodesError, AssertionError):
    """A mathematical guarantee failed; this indicates a bug or a false theorem."""
