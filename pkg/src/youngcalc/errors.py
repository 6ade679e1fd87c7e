"""Error types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class ValidationError(ValueError):
    """A descriptor violates the axioms it is required to satisfy."""


class NumericError(RuntimeError):
    """A numerical routine failed to converge or bracket."""


class InfMinusInfError(ArithmeticError):
    """The rejected combination (+inf) - (+inf)."""


class GapSequenceError(ValueError):
    """A gap sequence violates one of its construction conditions."""

    def __init__(self, condition: str, index: int):
        self.condition = condition
        self.index = index
        super().__init__(f"gap sequence condition {condition!r} violated at index {index}")
