"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class StratAlgError(Exception):
    exit_code = 1


class ParseError(StratAlgError):
    exit_code = 2

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InadmissibleRelation(ParseError):
    pass


class BudgetExceeded(StratAlgError):
    exit_code = 3

    def __init__(self, message: str, frontier=None):
        self.frontier = frontier
        super().__init__(message)


class CapExceeded(BudgetExceeded):
    """The presentation was not certified finite-dimensional within the length cap."""


class PreconditionViolated(StratAlgError):
    exit_code = 4


class NotDirected(PreconditionViolated):
    pass


class EquivalenceViolation(StratAlgError):
    """A soundness alarm: two routes that must agree did not."""

    exit_code = 10

    def __init__(self, message: str, details=None):
        self.details = details
        super().__init__(message)
