"""Custom exceptions for structured error handling and propagation.

This module provides domain-specific exceptions with error codes so that
solvers, the decision procedure and the CLI can report failures with
consistent context.
"""

from enum import Enum
from typing import Any, Dict, Optional


class ErrorCode(str, Enum):
    """Standard error codes for categorizing failures."""

    # Input errors (1xxx)
    VALIDATION_ERROR = "INPUT_1001"
    PARSE_ERROR = "INPUT_1002"
    PRECONDITION_FAILED = "INPUT_1003"
    NOT_A_SOLUTION = "INPUT_1004"

    # Matrix / seed errors (2xxx)
    INDEX_OUT_OF_RANGE = "MATRIX_2001"
    INVALID_PERMUTATION = "MATRIX_2002"

    # Solver errors (3xxx)
    CONIC_FORM_INVALID = "SOLVER_3001"
    NON_SQUAREFREE_DISCRIMINANT = "SOLVER_3002"
    PELL_DOMAIN_ERROR = "SOLVER_3003"
    DEGENERATE_REDUCTION = "SOLVER_3004"

    # Decision errors (4xxx)
    SEARCH_EXHAUSTED = "DECISION_4001"

    # System errors (5xxx)
    INTERNAL_ERROR = "SYSTEM_5001"
    INTERNAL_ASSERTION = "SYSTEM_5002"


class ClusterOrbitException(Exception):
    """Base exception for all cluster-orbit errors.

    All custom exceptions should inherit from this to enable
    structured error handling and propagation.
    """

    def __init__(
        self,
        message: str,
        error_code: ErrorCode,
        user_message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        original_exception: Optional[Exception] = None,
    ):
        """Initialize exception with structured error information.

        Args:
            message: Technical error message (for logging)
            error_code: Standard error code for categorization
            user_message: Short message for the CLI diagnostic stream
            details: Additional error context
            original_exception: Original exception if wrapping
        """
        super().__init__(message)
        self.error_code = error_code
        self.user_message = user_message or "An error occurred"
        self.details = details or {}
        self.original_exception = original_exception

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for logging/CLI payloads."""
        return {
            "success": False,
            "error_code": self.error_code.value,
            "message": str(self),
            "user_message": self.user_message,
            "details": self.details,
        }


class ValidationException(ClusterOrbitException):
    """Raised when input validation fails."""

    def __init__(self, field: str, reason: str, **kwargs):
        super().__init__(
            message=f"Validation error for {field}: {reason}",
            error_code=ErrorCode.VALIDATION_ERROR,
            user_message=f"Invalid value: {field}",
            details={"field": field, "reason": reason},
            **kwargs,
        )


class ParseException(ClusterOrbitException):
    """Raised when a number or word on the command line cannot be parsed."""

    def __init__(self, text: str, expected: str, **kwargs):
        super().__init__(
            message=f"Cannot parse {text!r} as {expected}",
            error_code=ErrorCode.PARSE_ERROR,
            user_message=f"Malformed {expected}",
            details={"text": text, "expected": expected},
            **kwargs,
        )


class PreconditionException(ClusterOrbitException):
    """Raised when an operation's documented precondition does not hold."""

    def __init__(self, operation: str, reason: str, **kwargs):
        super().__init__(
            message=f"{operation}: precondition failed: {reason}",
            error_code=ErrorCode.PRECONDITION_FAILED,
            user_message=reason,
            details={"operation": operation, "reason": reason},
            **kwargs,
        )


class NotASolutionException(ClusterOrbitException):
    """Raised when a triple is expected to solve the Markov-like equation but does not."""

    def __init__(self, triple: Any, reason: str, **kwargs):
        super().__init__(
            message=f"{triple} is not a valid solution: {reason}",
            error_code=ErrorCode.NOT_A_SOLUTION,
            user_message="Not a positive solution of XYZ - X^2 - Y^2 - Z^2 = 7",
            details={"triple": str(triple), "reason": reason},
            **kwargs,
        )


class IndexOutOfRangeException(ClusterOrbitException):
    """Raised when a mutation direction lies outside the exchangeable columns."""

    def __init__(self, index: int, upper: int, **kwargs):
        super().__init__(
            message=f"Mutation index {index} out of range 1..{upper}",
            error_code=ErrorCode.INDEX_OUT_OF_RANGE,
            user_message="Mutation index out of range",
            details={"index": index, "upper": upper},
            **kwargs,
        )


class InvalidPermutationException(ClusterOrbitException):
    """Raised when a permutation is malformed or moves a frozen index."""

    def __init__(self, permutation: Any, reason: str, **kwargs):
        super().__init__(
            message=f"Invalid permutation {permutation}: {reason}",
            error_code=ErrorCode.INVALID_PERMUTATION,
            user_message="Invalid permutation",
            details={"permutation": str(permutation), "reason": reason},
            **kwargs,
        )


class ConicFormException(ClusterOrbitException):
    """Raised when a conic form violates A > 0, E < 0, D > 0."""

    def __init__(self, form: Any, reason: str, **kwargs):
        kwargs.setdefault("error_code", ErrorCode.CONIC_FORM_INVALID)
        super().__init__(
            message=f"Conic form {form} rejected: {reason}",
            user_message="Conic form outside the supported class",
            details={"form": str(form), "reason": reason},
            **kwargs,
        )


class NonSquarefreeDiscriminantException(ConicFormException):
    """Raised when D = B^2 - 4AC is not squarefree."""

    def __init__(self, form: Any, discriminant: int, **kwargs):
        kwargs["error_code"] = ErrorCode.NON_SQUAREFREE_DISCRIMINANT
        super().__init__(
            form=form, reason=f"discriminant {discriminant} is not squarefree", **kwargs
        )


class PellDomainException(ClusterOrbitException):
    """Raised when X^2 - D Y^2 = 4 is requested for D <= 0 or D a perfect square."""

    def __init__(self, discriminant: int, reason: str, **kwargs):
        super().__init__(
            message=f"Pell equation undefined for D={discriminant}: {reason}",
            error_code=ErrorCode.PELL_DOMAIN_ERROR,
            user_message="D must be a positive non-square",
            details={"D": discriminant, "reason": reason},
            **kwargs,
        )


class DegenerateReductionException(ClusterOrbitException):
    """Raised when m = C0*C1*C2 - C1^2 - C2^2 vanishes."""

    def __init__(self, triple: Any, **kwargs):
        super().__init__(
            message=f"Reduced data is degenerate (m = 0) for {triple}",
            error_code=ErrorCode.DEGENERATE_REDUCTION,
            user_message="m = 0; reconstruction undefined",
            details={"triple": str(triple)},
            **kwargs,
        )


class SearchExhaustedException(ClusterOrbitException):
    """Raised when a bounded search proves no answer exists."""

    def __init__(self, search: str, reason: str, **kwargs):
        super().__init__(
            message=f"{search} exhausted: {reason}",
            error_code=ErrorCode.SEARCH_EXHAUSTED,
            user_message="No matching element",
            details={"search": search, "reason": reason},
            **kwargs,
        )


class InternalAssertionException(ClusterOrbitException):
    """Raised when an internal invariant (replay, descent) breaks."""

    def __init__(self, stage: str, reason: str, **kwargs):
        super().__init__(
            message=f"Internal assertion failed at {stage}: {reason}",
            error_code=ErrorCode.INTERNAL_ASSERTION,
            user_message="Internal error",
            details={"stage": stage, "reason": reason},
            **kwargs,
        )
