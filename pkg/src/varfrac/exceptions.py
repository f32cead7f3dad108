"""Exception hierarchy shared by all modules."""


class VarFracError(Exception):
    """Base class for errors raised by :mod:`varfrac`."""


class DomainError(VarFracError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class BranchCutError(DomainError):
    """A complex argument lies on the branch cut of the principal logarithm."""


class SingularPointError(DomainError):
    """An argument hits an isolated singular point of a formula."""


class EvaluationError(VarFracError, ArithmeticError):
    """A numerical evaluation produced a non-finite value."""


class SingularStepError(VarFracError, ArithmeticError):
    """A time-stepping scheme met a (numerically) singular linear step."""
