"""Shared exception types."""


class CapacityError(RuntimeError):
    """A request exceeds a configured desk-scale budget (sieve ceiling,
    enumeration order, polynomial length)."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries panel diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class WindowError(ValueError):
    """An argument lies outside the window where an identity is guaranteed."""
