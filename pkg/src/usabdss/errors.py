"""Exception hierarchy shared across the package."""


class UsabDssError(Exception):
    """Base class for all package errors."""


class DomainError(UsabDssError):
    """A value falls outside the mathematical domain of an operation."""


class ConfigurationError(UsabDssError):
    """Project or scale configuration is invalid or incomplete."""


class ValidationError(UsabDssError):
    """A submitted response payload is malformed."""


class AuthorizationError(UsabDssError):
    """The acting user is not allowed to perform the operation."""


class StateError(UsabDssError):
    """Operation attempted in the wrong project lifecycle state."""


class ConflictError(UsabDssError):
    """Duplicate submission for an already-answered (user, role, alternative, test)."""


class DegenerateJudgmentsError(DomainError):
    """Every criterion is fully dominated; the pairwise judgments must be revised."""
