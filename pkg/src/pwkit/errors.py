"""Exception types shared across the toolkit."""


class PwkitError(Exception):
    """Base class for all toolkit errors."""


class CapExceededError(PwkitError):
    """An exact solver was asked to handle a graph beyond its configured cap."""


class FormatError(PwkitError):
    """A text input could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FamilyError(PwkitError):
    """An instance does not belong to the graph family a kernelizer requires."""


class BatchError(PwkitError):
    """A batch of cutwidth instances is empty or mixes equivalence classes."""


class BudgetExceededError(PwkitError):
    """The reduction scheduler exceeded its application-count budget.

    This signals an implementation bug or a violated structural assumption,
    never a normal outcome; the partial trace is attached for diagnosis.
    """

    def __init__(self, message: str, trace=()):
        self.trace = tuple(trace)
        super().__init__(message)


class AuditError(PwkitError):
    """A kernelizer output violated one of its counting bounds."""
