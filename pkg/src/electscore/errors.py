"""Exception hierarchy shared by every module."""


class ElectionError(ValueError):
    """Base class for all errors raised by electscore."""


class InvalidElection(ElectionError):
    """A roster, ballot or axis violates the data-model invariants."""


class InvalidPair(ElectionError):
    pass


class InvalidMove(ElectionError):
    """A ballot edit cannot be applied (wrong ballot kind or impossible move)."""


class UnsupportedBallotKind(ElectionError):
    """The operation is only defined for a narrower class of ballots."""


class DomainViolation(ElectionError):
    """The election is outside the domain a fast algorithm requires.

    ``verdict`` carries the failing :class:`~electscore.domains.DomainVerdict`
    when one is available.
    """

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class BudgetExceeded(ElectionError):
    """An exhaustive search would exceed its configured budget."""


class ParseError(ElectionError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
