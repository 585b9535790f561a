"""Exception types shared by all modules."""


class DomainError(ValueError):
    """Raised when an argument is outside the domain of an operation."""


class PoleError(DomainError):
    """Raised when a hypergeometric lower parameter hits a pole."""


class VerificationError(RuntimeError):
    """Raised when an identity that must hold exactly fails."""
