"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable code so the service and CLI can
emit structured error records.
"""


class EmapError(Exception):
    code = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def record(self):
        rec = {"code": self.code, "message": self.message}
        if self.details:
            rec["details"] = {k: str(v) for k, v in self.details.items()}
        return rec


class ConfigError(EmapError):
    """Malformed or inconsistent session configuration."""
    code = "config"


class ConductorError(EmapError):
    """Scalar conductor mismatch or an unrepresentable field element."""
    code = "conductor"


class DomainError(EmapError):
    """Point outside the declared scheme domain."""
    code = "domain"


class AlgebraError(EmapError):
    """Violated algebraic invariant (Jacobi, automorphism, grading, ...)."""
    code = "algebra"


class RepresentationError(EmapError):
    """Invalid representation data or label."""
    code = "representation"


class NotApplicableError(EmapError):
    """Requested computation is undefined for this configuration."""
    code = "not-applicable"
