"""
Exception hierarchy for oddform.

Every error carries a stable ``code`` (used in JSON reports) and the CLI
``exit_code`` it maps to. All errors are ValueErrors so callers that only
guard against bad input keep working.
"""

from typing import Any, Optional


class OddformError(ValueError):
    """Base class for all library errors"""

    code: str = "oddform-error"
    exit_code: int = 2

    def __init__(self, message: str, *, details: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.details: dict[str, Any] = details or {}

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": str(self), "details": self.details}


# =========================
#        RINGS
# =========================
class SpecInvalidError(OddformError):
    code = "spec-invalid"


class SizeOverflowError(OddformError):
    code = "size-overflow"


class IncompatibleRingError(OddformError):
    code = "incompatible-ring"


class QuadrupleViolationError(OddformError):
    """Raised by quadruple validation; ``details`` holds the violation report"""

    code = "quadruple-violation"


class NotASymmetryError(QuadrupleViolationError):
    code = "not-a-symmetry"


class MuConstraintError(QuadrupleViolationError):
    code = "mu-constraint-failed"


class NotInvertibleError(OddformError):
    code = "not-invertible"
    exit_code = 1


# =========================
#     SETS AND CLOSURES
# =========================
class ClosureOverflowError(OddformError):
    code = "closure-overflow"
    exit_code = 4


class EnumerationOverflowError(OddformError):
    code = "enumeration-overflow"
    exit_code = 4


class CapExceededError(OddformError):
    code = "cap-exceeded"
    exit_code = 4


class PointNotInParameterError(OddformError):
    code = "point-not-in-parameter"


class CertificationFailedError(OddformError):
    code = "certification-failed"
    exit_code = 1


# =========================
#        MATRICES
# =========================
class BadIndicesError(OddformError):
    code = "bad-indices"


class SizeMismatchError(OddformError):
    code = "size-mismatch"


class IncompatibleBaseError(OddformError):
    code = "incompatible-base"


class NoShiftFoundError(OddformError):
    code = "no-shift-found"
    exit_code = 1


class ReductionFailedError(OddformError):
    code = "reduction-failed"
    exit_code = 1


class ScenarioAssertionError(OddformError):
    """A reproduced scenario diverged from its expected outcome"""

    code = "scenario-assertion"
    exit_code = 1
