"""Exception hierarchy shared by all subosc modules."""


class SuboscError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SuboscError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class SynthesisError(SuboscError, ArithmeticError):
    """Coefficient generation produced a non-finite value."""


class CapacityError(SuboscError):
    """A requested accuracy could not be reached within the resource caps."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class PlanError(SuboscError):
    """An infeasible plan was used without an explicit override."""


class NumericError(SuboscError, ArithmeticError):
    """A numerical evaluation produced non-finite samples."""
