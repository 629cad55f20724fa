"""
Custom exceptions and error handlers for consistent error responses.

Every failure of the workbench (bad input, malformed algebra, broken solver
invariant) is an AppException with a stable error code. Violated algebraic
properties are NOT exceptions: they are reported as data with witnesses.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from fastapi import HTTPException, Request, status
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

logger = logging.getLogger("tpsbench.api")


class AppException(Exception):
    """Base application exception."""

    def __init__(self, message: str, error_code: str, status_code: int = 500, details: Dict[str, Any] = None):
        self.message = message
        self.error_code = error_code
        self.status_code = status_code
        self.details = details or {}
        super().__init__(message)


class UsageError(AppException):
    """Raised for malformed command options or request fields."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_USAGE",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class ScalarFormatError(UsageError, ValueError):
    """Raised when a Gaussian-rational literal does not match the scalar grammar."""

    def __init__(self, text: str):
        super().__init__(f"Malformed scalar literal {text!r}", details={"text": text})
        self.error_code = "ERR_NUM_FORMAT"


class ScalarDivisionError(AppException, ZeroDivisionError):
    """Raised when inverting the zero scalar."""

    def __init__(self, message: str = "Division by zero in Gaussian rationals"):
        super().__init__(
            message=message,
            error_code="ERR_NUM_DIV0",
            status_code=status.HTTP_400_BAD_REQUEST,
        )


class UnknownAlgebraError(AppException):
    """Raised when a catalog name is not known."""

    def __init__(self, name: str, known: Any = None):
        super().__init__(
            message=f"Unknown algebra {name!r}",
            error_code="ERR_ALG_UNKNOWN",
            status_code=status.HTTP_404_NOT_FOUND,
            details={"name": name, "known": list(known or [])},
        )


class ParameterError(AppException):
    """Raised when a required algebra parameter is missing or ill-typed."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_ALG_PARAM",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class UnknownFamilyError(AppException):
    """Raised when a basis index names a family the algebra does not declare."""

    def __init__(self, family: str, algebra: Optional[str] = None):
        message = f"Unknown basis family {family!r}"
        if algebra:
            message = f"Unknown basis family {family!r} in algebra {algebra!r}"
        super().__init__(
            message=message,
            error_code="ERR_ALG_FAMILY",
            status_code=status.HTTP_400_BAD_REQUEST,
            details={"family": family, "algebra": algebra},
        )


class IndexOutsideGroupError(AppException):
    """Raised when a group part is not an integer combination of the generators."""

    def __init__(self, value: str, generators: Any = None):
        super().__init__(
            message=f"Group element {value} is not in the lattice spanned by the generators",
            error_code="ERR_ALG_GROUP",
            status_code=status.HTTP_400_BAD_REQUEST,
            details={"value": value, "generators": list(generators or [])},
        )


class AlgebraDefinitionError(AppException):
    """Raised when an algebra or product definition breaks a construction invariant."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_ALG_DEF",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class WindowError(AppException):
    """Raised for empty or inconsistent windows."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_WINDOW",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


@dataclass(frozen=True)
class SourceSpan:
    """1-based location of a token in DSL source text."""
    line: int
    column: int
    length: int = 0


class ParseError(AppException):
    """Raised for lexical, syntactic or semantic errors in `.liealg` sources."""

    KINDS = ("lex", "syntax", "semantic")

    def __init__(self, span: SourceSpan, kind: str, message: str, details: Dict[str, Any] = None):
        self.span = span
        self.kind = kind
        super().__init__(
            message=f"{span.line}:{span.column}: {kind} error: {message}",
            error_code=f"ERR_DSL_{kind.upper()}",
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            details={"line": span.line, "column": span.column, "length": span.length, **(details or {})},
        )
        self.reason = message


class FamilyRequestError(AppException):
    """Raised when a closed-form half-derivation family is requested outside its range of validity."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_HD_FAMILY",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class RecurrenceError(AppException):
    """Raised when the HW coefficient recurrence cannot reach the requested index."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_HD_RECURRENCE",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class InconsistentFamilyError(AppException):
    """Raised when a family generator handed to the TPS solver is not a half-derivation."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_TPS_FAMILY",
            status_code=status.HTTP_400_BAD_REQUEST,
            details=details,
        )


class SolverInvariantError(AppException):
    """Raised when a computed solution fails its own post-solve verification."""

    def __init__(self, message: str, details: Dict[str, Any] = None):
        super().__init__(
            message=message,
            error_code="ERR_SOLVER",
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            details=details,
        )


# Global Exception Handlers

async def app_exception_handler(request: Request, exc: AppException) -> JSONResponse:
    """Handler for custom application exceptions."""
    return JSONResponse(
        status_code=exc.status_code,
        content={
            "error_code": exc.error_code,
            "message": exc.message,
            "details": exc.details
        }
    )


async def http_exception_handler(request: Request, exc: HTTPException) -> JSONResponse:
    """Handler for FastAPI HTTPException with standardized format."""
    error_code_map = {
        400: "ERR_BAD_REQUEST",
        404: "ERR_NOT_FOUND",
        405: "ERR_METHOD_NOT_ALLOWED",
        500: "ERR_INTERNAL_SERVER"
    }

    error_code = error_code_map.get(exc.status_code, "ERR_UNKNOWN")

    return JSONResponse(
        status_code=exc.status_code,
        content={
            "error_code": error_code,
            "message": exc.detail,
            "details": {}
        }
    )


async def validation_exception_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
    """Handler for Pydantic validation errors."""
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={
            "error_code": "ERR_VALIDATION",
            "message": "Validation error",
            "details": {
                "errors": exc.errors()
            }
        }
    )


async def generic_exception_handler(request: Request, exc: Exception) -> JSONResponse:
    """Handler for unhandled exceptions."""
    logger.exception("Unhandled exception", extra={"path": request.url.path, "error_type": type(exc).__name__})
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={
            "error_code": "ERR_INTERNAL_SERVER",
            "message": "An internal server error occurred",
            "details": {}
        }
    )
