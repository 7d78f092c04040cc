class DomainError(ValueError):
    """Raised when a cylinder function is evaluated outside its domain."""
