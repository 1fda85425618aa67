"""Shared error types."""


class BudgetExceededError(RuntimeError):
    """A bounded search or enumeration ran past its configured budget.

    Carries whatever partial results were computed in ``partial`` so batch
    front ends can flag and emit them instead of discarding work.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
