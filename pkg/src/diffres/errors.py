"""Exception hierarchy shared by the library and the command line front end."""


class DiffresError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for this failure."""

    exit_code = 1


class ParseError(DiffresError):
    exit_code = 2

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotEssentialError(DiffresError):
    exit_code = 3


class BoundsExceededError(DiffresError):
    exit_code = 4


class InternalConsistencyError(DiffresError):
    exit_code = 5


class SizeGuardExceeded(BoundsExceededError):
    """Raised when an exact computation would be too large; carries a degree report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DegenerateSpecialization(DiffresError):
    exit_code = 5
