"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(DomainError):
    """A ladder step would leave the finite basis (e.g. raising K_N)."""
