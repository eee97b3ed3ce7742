"""Shared exception types."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class OracleBoundExceeded(RuntimeError):
    """A brute-force oracle was asked about a vector beyond its norm cap."""


class NodeBudgetExceeded(RuntimeError):
    """A backtracking search exceeded its node budget."""

    def __init__(self, budget, context=""):
        self.budget = budget
        self.context = context
        super().__init__(f"search node budget {budget} exhausted {context}".strip())


class EnumerationCapExceeded(RuntimeError):
    """Exhaustive enumeration requested beyond the configured cap."""
