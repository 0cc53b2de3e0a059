"""Exception handlers mapping failures to exit codes and error payloads.

Every handler writes one JSON error object to stderr and returns the exit
code of its failure family.
"""

import json
import logging
import sys
from typing import Any, Dict, Optional

from pydantic import ValidationError as PydanticValidationError

from l2boost.exceptions import (
    BoundViolation,
    L2BoostException,
    NumericalError,
    ValidationError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_BOUND_VIOLATION = 3


def create_error_response(
    code: str,
    message: str,
    details: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Create a consistent error payload.

    Args:
        code: Error code identifier
        message: Human-readable error message
        details: Additional error details

    Returns:
        Dict of the form {"error": {"code", "message"[, "details"]}}
    """
    error_content: Dict[str, Any] = {
        "error": {
            "code": code,
            "message": message,
        }
    }
    if details:
        error_content["error"]["details"] = details
    return error_content


def _emit(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, default=str, sort_keys=True), file=sys.stderr)


def validation_error_handler(exc: ValidationError) -> int:
    """Input or precondition failures (exit 1)."""
    _emit(create_error_response(exc.code, exc.message, exc.details))
    return EXIT_VALIDATION


def numerical_error_handler(exc: NumericalError) -> int:
    """Computations that cannot produce a valid number (exit 2)."""
    _emit(create_error_response(exc.code, exc.message, exc.details))
    return EXIT_NUMERICAL


def bound_violation_handler(exc: BoundViolation) -> int:
    """Greedy remainders above their bound (exit 3)."""
    _emit(create_error_response(exc.code, exc.message, exc.details))
    return EXIT_BOUND_VIOLATION


def pydantic_validation_error_handler(exc: PydanticValidationError) -> int:
    """
    Configuration values rejected by a RunConfig model (exit 1).
    """
    errors = []
    for error in exc.errors():
        field = ".".join(str(loc) for loc in error["loc"])
        errors.append({
            "field": field,
            "message": error["msg"],
            "type": error["type"],
        })
    _emit(create_error_response(
        code="VALIDATION_ERROR",
        message="Configuration validation failed",
        details={"errors": errors},
    ))
    return EXIT_VALIDATION


def generic_exception_handler(exc: Exception) -> int:
    """Catch-all for unexpected errors (exit 2)."""
    logger.exception("Unexpected error")
    _emit(create_error_response(
        code="INTERNAL_ERROR",
        message="An unexpected error occurred",
        details={"type": type(exc).__name__},
    ))
    return EXIT_NUMERICAL


def register_exception_handlers(app) -> None:
    """
    Register all exception handlers with the CLI application.

    Handlers are consulted in registration order, so specific families
    come before the base exception and the catch-all.

    Args:
        app: Application instance
    """
    app.add_exception_handler(ValidationError, validation_error_handler)
    app.add_exception_handler(NumericalError, numerical_error_handler)
    app.add_exception_handler(BoundViolation, bound_violation_handler)
    app.add_exception_handler(PydanticValidationError, pydantic_validation_error_handler)
    app.add_exception_handler(L2BoostException, numerical_error_handler)
    app.add_exception_handler(Exception, generic_exception_handler)
