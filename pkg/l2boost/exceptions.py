"""Custom exceptions and error handling for l2boost."""

from typing import Any, Dict, Optional


class L2BoostException(Exception):
    """Base exception for all l2boost errors."""

    def __init__(
        self,
        message: str,
        code: str,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)


class ValidationError(L2BoostException):
    """Raised when inputs violate an operation's preconditions (exit 1)."""

    def __init__(
        self,
        message: str = "Validation failed",
        code: str = "VALIDATION_ERROR",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, code, details)


class NumericalError(L2BoostException):
    """Raised when a computation cannot produce a valid number (exit 2)."""

    def __init__(
        self,
        message: str = "Numerical failure",
        code: str = "NUMERICAL_ERROR",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, code, details)


class BoundViolation(L2BoostException):
    """Raised when a greedy remainder exceeds its theoretical bound (exit 3)."""

    def __init__(
        self,
        message: str = "Remainder norm exceeds the greedy bound",
        code: str = "BOUND_VIOLATION",
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, code, details)


# Validation family

class ZeroVarianceColumn(ValidationError):
    def __init__(self, column: int, name: Optional[str] = None):
        super().__init__(
            f"Column {column} has zero empirical variance",
            "ZERO_VARIANCE_COLUMN",
            {"column": column, "name": name},
        )


class ZeroVarianceSample(ValidationError):
    def __init__(self, row: int):
        super().__init__(
            f"Sample {row} is constant after clipping and log transform",
            "ZERO_VARIANCE_SAMPLE",
            {"row": row},
        )


class DimensionMismatch(ValidationError):
    def __init__(self, message: str = "Dimensions do not match", **details: Any):
        super().__init__(message, "DIMENSION_MISMATCH", details)


class EmptyDesign(ValidationError):
    def __init__(self):
        super().__init__("Design has no predictor columns", "EMPTY_DESIGN")


class ZeroColumn(ValidationError):
    def __init__(self):
        super().__init__("Selected column has zero norm", "ZERO_COLUMN")


class IterationOutOfRange(ValidationError):
    def __init__(self, m: int, m_max: int):
        super().__init__(
            f"Iteration {m} outside 0..{m_max}",
            "ITERATION_OUT_OF_RANGE",
            {"m": m, "max": m_max},
        )


class BadFoldCount(ValidationError):
    def __init__(self, k: int, n: int):
        super().__init__(
            f"Fold count {k} must satisfy 2 <= k <= n = {n}",
            "BAD_FOLD_COUNT",
            {"k": k, "n": n},
        )


class DegenerateSplit(ValidationError):
    def __init__(self, message: str = "A class vanished from a split", **details: Any):
        super().__init__(message, "DEGENERATE_SPLIT", details)


class BadWeakness(ValidationError):
    def __init__(self, b: float):
        super().__init__(
            f"Weakness parameter b = {b} must lie in (0, 1]",
            "BAD_WEAKNESS",
            {"b": b},
        )


class InputFormatError(ValidationError):
    def __init__(self, message: str, **details: Any):
        super().__init__(message, "INPUT_FORMAT_ERROR", details)


# Numerical family

class NumericalStop(NumericalError):
    def __init__(self, m: int):
        super().__init__(
            f"Residual sum of squares underflowed at iteration {m}",
            "NUMERICAL_STOP",
            {"m": m},
        )


class DegenerateDenominator(NumericalError):
    def __init__(self, trace: float, n: int):
        super().__init__(
            "AIC_c denominator is not positive (trace + 2 >= n)",
            "DEGENERATE_DENOMINATOR",
            {"trace": trace, "n": n},
        )


class ZeroSigma(NumericalError):
    def __init__(self):
        super().__init__("Residual variance is zero", "ZERO_SIGMA")


class NoValidIteration(NumericalError):
    def __init__(self):
        super().__init__("No iteration has a valid criterion value", "NO_VALID_ITERATION")


class SingularDesign(NumericalError):
    def __init__(self, n: int, p: int):
        super().__init__(
            "Design is not of full column rank",
            "SINGULAR_DESIGN",
            {"n": n, "p": p},
        )


class NoConvergence(NumericalError):
    def __init__(self, sweeps: int, kkt_gap: float, lam: float):
        super().__init__(
            f"Coordinate descent did not converge in {sweeps} sweeps",
            "NO_CONVERGENCE",
            {"sweeps": sweeps, "kkt_gap": kkt_gap, "lambda": lam},
        )


class NotPositiveDefinite(NumericalError):
    def __init__(self, p: int):
        super().__init__(
            f"Covariance matrix of dimension {p} is not positive definite",
            "NOT_POSITIVE_DEFINITE",
            {"p": p},
        )


class FixedPointFailure(NumericalError):
    def __init__(self, message: str = "Fixed-point bisection failed", **details: Any):
        super().__init__(message, "FIXED_POINT_FAILURE", details)
