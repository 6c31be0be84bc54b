"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: precondition failures exit 2, budget
exhaustion exits 3 and internal consistency failures exit 4.
"""


class QuarticError(Exception):
    """Base class for all package errors."""


class PreconditionError(QuarticError, ValueError):
    """An input violates an operation's documented precondition."""


class SingleClass(PreconditionError):
    """The system has one equivalence class of indices; no split normal form exists."""


class HypothesisViolated(PreconditionError):
    """The index profile does not satisfy the small-n requirements of the index-set partition."""


class DependentForms(PreconditionError):
    """Two of the three linear forms of a triple are proportional."""


class BudgetExceeded(QuarticError):
    """An enumeration would exceed the configured memory/entry budget."""


class TheoremViolation(QuarticError):
    """A search that is guaranteed to succeed came back empty (indicates a bug)."""


class QuadratureError(QuarticError):
    """Numerical integration failed to reach the requested tolerance."""
