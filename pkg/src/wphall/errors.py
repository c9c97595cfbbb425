"""Shared exception types."""


class BudgetError(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class ValidationError(ValueError):
    """Bad configuration or input."""


class ClosureError(RuntimeError):
    """A Hall product would leave the supported basis of sheaf classes."""


class VerificationError(RuntimeError):
    """An internal cross-check (interpolation guard, stabilization) failed."""
