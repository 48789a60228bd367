"""Exception taxonomy shared across the package.

Validation-style failures (bad domain values, malformed words, unmet
preconditions) all derive from ``ValueError`` so callers can catch one base
class; resource refusals derive from ``RuntimeError`` and carry the projected
cost that triggered them.
"""


class BetadynError(Exception):
    """Base class for package-specific errors."""


class DomainError(BetadynError, ValueError):
    """Input outside the mathematical domain of an operation."""


class InvalidWordError(BetadynError, ValueError):
    """Digit string is not over the base's alphabet or not admissible."""


class PreconditionError(BetadynError, ValueError):
    """A documented precondition of an operation does not hold."""


class BudgetError(BetadynError, RuntimeError):
    """Projected resource usage exceeds the configured budget."""
