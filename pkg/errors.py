"""
Exception hierarchy for the arrangement polynomial engine.

Precondition failures subclass ValueError, broken identities subclass
RuntimeError. The CLI maps them onto exit codes.
"""
from typing import Any, Dict, Optional


class TutteError(Exception):
    """Base class for every error raised by this package."""


class InvalidOrderError(TutteError, ValueError):
    """Root order m is not a positive integer."""


class IncompatibleRingError(TutteError, ValueError):
    """Operands live in different rings (different m, q or backend)."""


class NoRootError(TutteError, ValueError):
    """The requested prime field has no element of the requested order."""


class ArrangementError(TutteError, ValueError):
    """Invalid hyperplane or arrangement data."""


class InvalidFamilyError(ArrangementError):
    """Unknown family name or parameters outside the family's domain."""


class NotRealError(TutteError, ValueError):
    """Operation only defined for real arrangements."""


class InvalidReductionError(TutteError, ValueError):
    """Reduction mod q destroys the data needed by the requested count."""


class InvalidParameterError(TutteError, ValueError):
    """Numeric parameter outside the domain of an operation."""


class NotSymmetricError(TutteError, ValueError):
    """Arrangement is not the orbit of the supplied representatives."""


class ParseError(TutteError, ValueError):
    """Syntax error in an arrangement file, with position information."""

    def __init__(self, message: str, line: Optional[int] = None,
                 token: Optional[int] = None, text: str = ''):
        self.line = line
        self.token = token
        self.text = text
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token}")
        prefix = f"{', '.join(where)}: " if where else ''
        super().__init__(f"{prefix}{message}")


class InconsistencyError(TutteError, RuntimeError):
    """An identity that must hold exactly failed; signals a bug."""


class TheoremViolation(TutteError, RuntimeError):
    """Point counting did not reproduce the coboundary polynomial on this ring."""

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None):
        self.report = report or {}
        super().__init__(message)


class FreenessViolation(TheoremViolation):
    """A root of unity other than 1 fixes a nonzero ring element."""
