class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its configured cap."""


class ParameterError(ValueError):
    """Raised when construction parameters violate a precondition."""
