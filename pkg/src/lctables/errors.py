"""Exception hierarchy shared by the table, decomposition and cone modules."""


class TableError(ValueError):
    """Base class for every error raised by lctables."""


class NegativeEntry(TableError):
    pass


class TailInconsistent(TableError):
    pass


class WouldGoNegative(NegativeEntry):
    pass


class InvalidLabel(TableError):
    pass


class NotPrimary(TableError):
    pass


class NotStarShaped(TableError):
    pass


class HypothesesViolated(TableError):
    pass


class NotInCone(TableError):
    """The input violates one of the cone's defining inequalities.

    ``violation`` carries the failing functional and its value when the
    caller ran a membership test first.
    """

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation
