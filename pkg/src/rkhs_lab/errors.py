"""Exception hierarchy shared by all modules."""


class RKHSLabError(Exception):
    """Base class for errors raised by rkhs_lab."""


class DimensionMismatchError(RKHSLabError, ValueError):
    pass


class OutsideBallError(RKHSLabError, ValueError):
    """A point lies on or outside the boundary of the open unit ball."""


class TailBoundError(RKHSLabError):
    """A certified truncation tail could not be made small enough."""


class NotPositiveError(RKHSLabError):
    """A kernel (or operator compression) failed its positivity check.

    ``report`` carries the :class:`~rkhs_lab.gram.PsdReport` (or eigenvalue
    data) that triggered the failure, when available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class DeltaNotInjectiveError(RKHSLabError):
    """The defect ``I - M_b^* M_b`` is numerically singular on the truncation."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class ConfigError(RKHSLabError, ValueError):
    """Invalid experiment configuration; ``diagnostics`` lists (key path, reason)."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = ["{}: {}".format(path or "<root>", reason) for path, reason in self.diagnostics]
        super().__init__("invalid config:\n  " + "\n  ".join(lines))
