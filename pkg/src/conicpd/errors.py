"""Typed errors shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """A density was evaluated exactly on a singular boundary point."""


class InfiniteVarianceError(DomainError):
    """An importance-sampling estimator was refused because its second moment diverges."""


class NumericalError(RuntimeError):
    """A quadrature or root-finding routine failed to converge to tolerance."""
