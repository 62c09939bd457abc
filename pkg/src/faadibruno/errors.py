"""Exception types shared across the package."""


class FaaDiBrunoError(Exception):
    """Base class for every error raised by this package."""


class CapExceeded(FaaDiBrunoError):
    """An order exceeds a configured resource guard.

    This is a deliberate limit on work and memory, not a mathematical error.
    """

    def __init__(self, what, n, cap):
        self.what = what
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: n={n} exceeds cap {cap}")


class OrderMismatch(FaaDiBrunoError, ValueError):
    """Sequences or jets have incompatible or insufficient orders."""


class PointMismatch(FaaDiBrunoError, ValueError):
    """Jets were combined around different expansion points."""


class KindError(FaaDiBrunoError, TypeError):
    """An operation is not available for the requested scalar kind."""


class DomainError(FaaDiBrunoError, ValueError):
    """An argument lies outside the domain of an operation."""
