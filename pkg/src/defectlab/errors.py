"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI copies
into its JSON reports.
"""

from __future__ import annotations


class DefectLabError(Exception):
    code = "error"


class DescriptorError(DefectLabError):
    """Operands live over incompatible group or field descriptors."""

    code = "descriptor"


class DivisibilityError(DefectLabError):
    """A result would leave the subgroup (or field) it must live in."""

    code = "divisibility"


class PrecisionError(DefectLabError):
    """A series cannot be told apart from zero at its precision.

    ``partial`` optionally carries whatever was computed before the
    precision ran out (for example a partial reduction trace).
    """

    code = "precision"

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NotIntegralError(DefectLabError):
    code = "not_integral"


class PreconditionError(DefectLabError):
    code = "precondition"


class NewtonDomainError(PreconditionError):
    code = "newton_domain"


class InsufficientDataError(DefectLabError):
    code = "insufficient_data"


class UndecidableError(DefectLabError):
    """A decision needs a certified distance that could not be produced."""

    code = "undecidable"


class ParseError(DefectLabError):
    code = "parse"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DepthExhaustedError(DefectLabError):
    """A finite tower ran out of generators; treated like an exhausted budget."""

    code = "depth"
