"""Exception hierarchy shared by every keithlab module."""


class KeithlabError(Exception):
    """Base class for all keithlab errors."""


class InvalidDigit(KeithlabError, ValueError):
    pass


class EmptyInput(KeithlabError, ValueError):
    pass


class DomainError(KeithlabError, ValueError):
    """Arguments lie outside the region where an operation is defined."""


class DimensionMismatch(KeithlabError, ValueError):
    pass


class PrecisionError(KeithlabError, ValueError):
    pass


class BudgetExceeded(KeithlabError, RuntimeError):
    """A brute-force computation would exceed its configured size budget."""

    def __init__(self, needed: int, budget: int, what: str = "candidates"):
        super().__init__(f"{what}: {needed} exceeds budget {budget}")
        self.needed = needed
        self.budget = budget
