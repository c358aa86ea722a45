class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class UnsupportedError(ValueError):
    """The operation is not available for this kind of input."""
