"""Exception hierarchy shared by every module."""


class DualityError(Exception):
    """Base class for all errors raised by dualitykit."""


class DomainError(DualityError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(DualityError, ValueError):
    """A structural precondition failed (not a lattice, not Boolean, ...).

    ``witness`` holds the offending elements when one is available and
    ``report`` the failing CheckReport when the precondition was a law check.
    """

    def __init__(self, message, witness=None, report=None):
        super().__init__(message)
        self.witness = witness
        self.report = report


class InternalConsistencyError(DualityError):
    """A constructed structure failed a property that must hold by theory."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
