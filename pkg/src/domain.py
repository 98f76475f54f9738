import hashlib, json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from rings.spec import RingSpec

# =========================
#        CONFIG
# =========================
ElementRef = Union[int, str, list[Any]]

CLASSICAL_KINDS = ("GL-odd", "O-odd", "Sp-odd", "even-as-odd")


class InstanceConfig(BaseModel):
    """
    JSON instance description:

        {"ring": {"kind": "prime_field", "p": 2}, "involution": "identity",
         "lambda": 1, "mu": 0, "delta": "max", "n": 3}

    ``delta`` is "min", "max", an explicit list of [x, y] pairs, or one of
    CLASSICAL_KINDS, which also fixes involution, lambda and mu.
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    ring: RingSpec
    involution: Union[str, list[int]] = "identity"
    lambda_: ElementRef = Field(default="one", alias="lambda")
    mu: ElementRef = "zero"
    delta: Union[str, list[list[Any]]] = "max"
    n: int = Field(default=1, ge=1)
    ideal: Optional[list[ElementRef]] = None
    lambda_subset: Optional[list[ElementRef]] = Field(default=None, description="Lambda for the even-as-odd case")

    @field_validator("delta")
    @classmethod
    def _check_delta(cls, value):
        if isinstance(value, str) and value not in ("min", "max") + CLASSICAL_KINDS:
            raise ValueError(f"delta must be 'min', 'max', a point list or one of {CLASSICAL_KINDS}")
        return value

    @property
    def classical_kind(self) -> Optional[str]:
        return self.delta if isinstance(self.delta, str) and self.delta in CLASSICAL_KINDS else None

    def digest(self) -> str:
        payload = json.dumps(self.model_dump(mode="json", by_alias=True, exclude_none=True), sort_keys=True)
        return hashlib.sha1(payload.encode()).hexdigest()[:12]


# =========================
#        VERDICTS
# =========================
class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    TRUNCATED = "truncated"


MAX_WITNESSES = 10


@dataclass(kw_only=True)
class CheckResult:
    """Outcome of one named identity or containment check"""

    name: str
    cases: int = 0
    failures: int = 0
    truncated: bool = False
    exhaustive: bool = True
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def record(self, ok: bool, witness: Union[dict[str, Any], Callable[[], dict[str, Any]], None] = None) -> bool:
        """Count one case; keep a witness for the first failures"""
        self.cases += 1
        if not ok:
            self.failures += 1
            if witness is not None and len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness() if callable(witness) else witness)
        return ok

    def absorb(self, other: "CheckResult") -> None:
        self.cases += other.cases
        self.failures += other.failures
        self.truncated = self.truncated or other.truncated
        self.exhaustive = self.exhaustive and other.exhaustive
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses.extend(other.witnesses[:max(room, 0)])

    @property
    def verdict(self) -> Verdict:
        if self.failures:
            return Verdict.FAIL
        if self.truncated:
            return Verdict.TRUNCATED
        return Verdict.PASS

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "cases": self.cases,
            "failures": self.failures,
            "exhaustive": self.exhaustive,
            "witnesses": self.witnesses,
            "details": self.details,
        }


# =========================
#        REPORTS
# =========================
@dataclass(kw_only=True)
class Report:
    """Machine-readable result of one CLI command"""

    command: str
    instance: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    error: Optional[dict[str, Any]] = None
    warnings: list[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def add(self, *checks: CheckResult) -> None:
        self.checks.extend(checks)

    @property
    def failed(self) -> bool:
        return any(c.verdict == Verdict.FAIL for c in self.checks)

    @property
    def truncated(self) -> bool:
        return any(c.verdict == Verdict.TRUNCATED for c in self.checks)

    def exit_code(self, strict: bool = False) -> int:
        if self.error is not None:
            return int(self.error.get("exit_code", 2))
        if self.failed:
            return 1
        if strict and self.truncated:
            return 3
        return 0

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        payload = {
            "command": self.command,
            "instance": self.instance,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
            "error": self.error,
            "warnings": self.warnings,
        }
        if include_timing:
            payload["timing"] = {"elapsed_seconds": round(self.elapsed_seconds, 3)}
        return payload

    def to_json(self, include_timing: bool = True, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(include_timing), indent=indent, sort_keys=True, default=str)
