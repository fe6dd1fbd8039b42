"""
Error types for various orthoplex routines
"""

from typing import Any, Dict, Optional

import jsonschema.exceptions  # type: ignore


class ValidationError(ValueError):
    """
    An input violates the precondition of the routine it was passed to
    """

    def details(self) -> Dict[str, Any]:
        return {}


class SchemaValidationError(ValidationError):
    cause: jsonschema.exceptions.ValidationError

    def __init__(self, message: str, cause: jsonschema.exceptions.ValidationError):
        super().__init__(message)

        self.cause = cause

    def details(self) -> Dict[str, Any]:
        return {"path": [str(p) for p in self.cause.absolute_path]}


class DomainError(ValidationError):
    pass


class ExpressionSyntaxError(ValidationError):
    position: int

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position

    def details(self) -> Dict[str, Any]:
        return {"position": self.position}


class UnknownFamilyError(ValidationError):
    pass


class NumericalError(RuntimeError):
    def details(self) -> Dict[str, Any]:
        return {}


class ConvergenceError(NumericalError):
    pass


class QuadratureError(NumericalError):
    pass


class BoundaryMaximumError(NumericalError):
    location: float

    def __init__(self, message: str, location: float):
        super().__init__(message)
        self.location = location

    def details(self) -> Dict[str, Any]:
        return {"location": self.location}


class ClassificationError(NumericalError):
    m_star: Optional[float]

    def __init__(self, message: str, m_star: Optional[float] = None):
        super().__init__(message)
        self.m_star = m_star

    def details(self) -> Dict[str, Any]:
        return {} if self.m_star is None else {"m_star": self.m_star}
