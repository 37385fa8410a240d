"""
Custom exception hierarchy for quiverlab.

Every failure the library can report is a subclass of QuiverLabError and
carries a stable error code, so the CLI can map it to an exit code and
scripts can match on it without parsing messages.

Exception Hierarchy:
    QuiverLabError (base)
    ├── ValidationError                      (CLI exit 2)
    │   ├── FieldError
    │   ├── ShapeMismatchError
    │   ├── QuiverError
    │   │   ├── CyclicQuiverError
    │   │   └── VertexConditionError
    │   ├── RepresentationError
    │   │   └── MorphismError
    │   ├── GraphTypeError
    │   ├── LoopReflectionError
    │   ├── DecomposableInputError
    │   ├── MeshWindowError
    │   ├── CharacteristicError
    │   ├── NonNilpotentRadicalError
    │   ├── RadicalSquareError
    │   ├── TotalRepError
    │   ├── SchemaError
    │   └── ConfigurationError
    └── IncompleteComputationError           (CLI exit 3)
        ├── DecompositionIncompleteError
        ├── IrrationalParameterError
        └── StepBudgetExceededError

Usage:
    from quiverlab.exceptions import CyclicQuiverError

    try:
        order = admissible_ordering_or_raise(q)
    except CyclicQuiverError as e:
        logger.error(f"Coxeter functor unavailable: {e}")
"""

from __future__ import annotations

from typing import Any, Dict, Optional, Sequence


class QuiverLabError(Exception):
    """
    Base exception for all quiverlab errors.

    Attributes:
        message: Human-readable error description.
        error_code: Optional error code for programmatic handling.
        details: Optional dictionary with additional context.
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def __str__(self) -> str:
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to a JSON-ready dictionary."""
        result: Dict[str, Any] = {
            "error": self.__class__.__name__,
            "message": self.message,
        }
        if self.error_code:
            result["error_code"] = self.error_code
        if self.details:
            result["details"] = self.details
        return result


# =============================================================================
# Validation errors (bad input, violated preconditions)
# =============================================================================


class ValidationError(QuiverLabError):
    """Base class for rejected inputs."""

    exit_code = 2


class FieldError(ValidationError):
    """Raised for unknown field descriptors, non-prime p, or lossy conversion."""

    def __init__(self, message: str, descriptor: Optional[str] = None) -> None:
        details = {"descriptor": descriptor} if descriptor is not None else None
        super().__init__(message, error_code="FIELD_001", details=details)


class ShapeMismatchError(ValidationError):
    """Raised when matrix or vector shapes are incompatible."""

    def __init__(
        self,
        message: str,
        left: Optional[Sequence[int]] = None,
        right: Optional[Sequence[int]] = None,
    ) -> None:
        details: Dict[str, Any] = {}
        if left is not None:
            details["left"] = list(left)
        if right is not None:
            details["right"] = list(right)
        super().__init__(message, error_code="LINALG_001", details=details)


class QuiverError(ValidationError):
    """Raised for malformed quivers or unknown vertices/arrows."""

    def __init__(
        self, message: str, error_code: str = "QUIVER_001", **details: Any
    ) -> None:
        super().__init__(message, error_code=error_code, details=details or None)


class CyclicQuiverError(QuiverError):
    """Raised when an operation needs an acyclic quiver."""

    def __init__(self, operation: str) -> None:
        super().__init__(
            f"{operation} requires an acyclic quiver (infinite path set)",
            error_code="QUIVER_002",
            operation=operation,
        )


class VertexConditionError(QuiverError):
    """Raised when a vertex is not a sink/source as the operation requires."""

    def __init__(self, vertex: int, expected: str) -> None:
        super().__init__(
            f"vertex {vertex} is not a {expected}",
            error_code="QUIVER_003",
            vertex=vertex,
            expected=expected,
        )


class RepresentationError(ValidationError):
    """Raised when a representation is inconsistent with its quiver."""

    def __init__(self, message: str, error_code: str = "REP_001", **details: Any) -> None:
        super().__init__(message, error_code=error_code, details=details or None)


class MorphismError(RepresentationError):
    """Raised when a family of matrices fails the intertwining law."""

    def __init__(self, message: str, arrow: Optional[str] = None) -> None:
        if arrow is None:
            super().__init__(message, error_code="REP_002")
        else:
            super().__init__(message, error_code="REP_002", arrow=arrow)


class GraphTypeError(ValidationError):
    """Raised when an operation needs a Dynkin or Euclidean graph."""

    def __init__(self, message: str, found: Optional[str] = None) -> None:
        details = {"found": found} if found is not None else None
        super().__init__(message, error_code="FORMS_001", details=details)


class LoopReflectionError(ValidationError):
    """Raised when reflecting at a vertex carrying a loop."""

    def __init__(self, vertex: int) -> None:
        super().__init__(
            "reflection undefined at loop vertex",
            error_code="FORMS_002",
            details={"vertex": vertex},
        )


class DecomposableInputError(ValidationError):
    """Raised when an indecomposable representation was required."""

    def __init__(self, operation: str, dims: Sequence[int]) -> None:
        super().__init__(
            f"{operation} requires an indecomposable representation",
            error_code="DECOMP_002",
            details={"operation": operation, "dims": list(dims)},
        )


class MeshWindowError(ValidationError):
    """Raised when a ZQ window cannot hold all paths of a query."""

    def __init__(self, message: str, depth: int) -> None:
        super().__init__(
            message, error_code="CLASSIFY_002", details={"depth": depth}
        )


class CharacteristicError(ValidationError):
    """Raised when the field characteristic does not suit a group construction."""

    def __init__(self, message: str, characteristic: int) -> None:
        super().__init__(
            message,
            error_code="GROUP_001",
            details={"characteristic": characteristic},
        )


class NonNilpotentRadicalError(ValidationError):
    """Raised when the radical filtration does not reach zero."""

    def __init__(self, dims: Sequence[int]) -> None:
        super().__init__(
            "radical filtration is not nilpotent; Rad X and rad X differ "
            "(the simple of the Jordan quiver with nonzero loop is the "
            "standard example)",
            error_code="RAD_001",
            details={"stable_dims": list(dims)},
        )


class RadicalSquareError(ValidationError):
    """Raised when the S functor receives a rep with Rad^2 != 0."""

    def __init__(self, dims: Sequence[int]) -> None:
        super().__init__(
            "representation does not have radical square zero",
            error_code="RAD_002",
            details={"rad2_dims": list(dims)},
        )


class TotalRepError(ValidationError):
    """Raised when a total-representation family violates its identities."""

    def __init__(self, message: str) -> None:
        super().__init__(message, error_code="WILD_001")


class SchemaError(ValidationError):
    """Raised when an input file does not match its JSON schema."""

    def __init__(self, message: str, errors: Optional[Sequence[str]] = None) -> None:
        details = {"errors": list(errors)} if errors else None
        super().__init__(message, error_code="IO_001", details=details)


class ConfigurationError(ValidationError):
    """
    Raised when configuration is invalid or missing.

    Attributes:
        config_key: The configuration key that caused the error.
        expected_type: What kind of value was expected.
    """

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        expected_type: Optional[str] = None,
    ) -> None:
        details: Dict[str, Any] = {}
        if config_key:
            details["config_key"] = config_key
        if expected_type:
            details["expected_type"] = expected_type
        super().__init__(message, error_code="CONFIG_001", details=details)
        self.config_key = config_key
        self.expected_type = expected_type


# =============================================================================
# Declared incompleteness (the library refuses to guess)
# =============================================================================


class IncompleteComputationError(QuiverLabError):
    """Base class for computations that stop at a documented boundary."""

    exit_code = 3


class DecompositionIncompleteError(IncompleteComputationError):
    """
    Raised when no splitting is found and locality cannot be certified.

    Attributes:
        dims: Dimension vector of the stubborn summand.
        end_dim: Dimension of its endomorphism algebra.
    """

    def __init__(self, dims: Sequence[int], end_dim: int) -> None:
        super().__init__(
            "decomposition guarantee not met: End/rad is not certified split",
            error_code="DECOMP_001",
            details={"dims": list(dims), "end_dim": end_dim},
        )
        self.dims = list(dims)
        self.end_dim = end_dim


class IrrationalParameterError(IncompleteComputationError):
    """Raised when a regular Kronecker summand has no eigenvalue in the field."""

    def __init__(self, field: str, polynomial: Optional[str] = None) -> None:
        details: Dict[str, Any] = {"field": field}
        if polynomial is not None:
            details["polynomial"] = polynomial
        super().__init__(
            "regular parameter not rational over the field",
            error_code="KRON_001",
            details=details,
        )


class StepBudgetExceededError(IncompleteComputationError):
    """Raised when a Coxeter iteration exceeds the configured step budget."""

    def __init__(self, operation: str, budget: int) -> None:
        super().__init__(
            f"{operation} exceeded the step budget of {budget}",
            error_code="CLASSIFY_001",
            details={"operation": operation, "budget": budget},
        )
