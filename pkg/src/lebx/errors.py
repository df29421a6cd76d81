"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A gamma function in a numerator was evaluated at a nonpositive integer."""


class ResourceLimitError(RuntimeError):
    """A configured size or evaluation cap would be exceeded."""


class BudgetExceededError(ResourceLimitError):
    """The maximizer ran out of its evaluation budget."""


class MissingNodeError(KeyError):
    """An interpolation value is missing for some node of the grid."""


class PartitionError(RuntimeError):
    """The configured index regions overlap or miss part of the index set."""


class HypothesisError(ValueError):
    """A checker was invoked on a point violating its inequality's hypotheses."""
