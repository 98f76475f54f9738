from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator
from sympy import isprime

from utils.errors import SpecInvalidError


BASE_KINDS = ("integers_mod", "prime_field")

_KIND_ALIASES = {
    "integers_mod": "integers_mod",
    "zmod": "integers_mod",
    "prime_field": "prime_field",
    "matrix": "matrix",
    "matrix_ring": "matrix",
    "product_opposite": "product_opposite",
    "product_with_opposite": "product_opposite",
}


class RingSpec(BaseModel):
    """
    Construction recipe for a finite ring.

    JSON form: {"kind": "matrix", "dim": 2, "inner": {"kind": "prime_field", "p": 2}}.
    Matrix and product constructions take a base ring (integers mod m or a
    prime field) as ``inner``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["integers_mod", "prime_field", "matrix", "product_opposite"]
    m: Optional[int] = None
    p: Optional[int] = None
    dim: Optional[int] = None
    inner: Optional["RingSpec"] = None

    @field_validator("kind", mode="before")
    @classmethod
    def _normalize_kind(cls, value: Any) -> Any:
        if isinstance(value, str):
            key = value.strip().lower().replace("-", "_")
            return _KIND_ALIASES.get(key, key)
        return value

    @model_validator(mode="after")
    def _check_parameters(self) -> "RingSpec":
        match self.kind:
            case "integers_mod":
                if self.m is None or self.m < 2:
                    raise ValueError(f"integers_mod needs m >= 2, got {self.m}")

            case "prime_field":
                if self.p is None or not isprime(self.p):
                    raise ValueError(f"prime_field needs a prime p, got {self.p}")

            case "matrix":
                if self.dim is None or self.dim < 1:
                    raise ValueError(f"matrix needs dim >= 1, got {self.dim}")
                self._require_base_inner()

            case "product_opposite":
                self._require_base_inner()

        return self

    def _require_base_inner(self) -> None:
        if self.inner is None:
            raise ValueError(f"{self.kind} needs an inner ring")
        if self.inner.kind not in BASE_KINDS:
            raise ValueError(
                f"{self.kind} only nests over integers_mod or prime_field, got {self.inner.kind}"
            )

    @property
    def base_modulus(self) -> int:
        """Characteristic-style modulus of the commutative base"""
        match self.kind:
            case "integers_mod":
                return self.m
            case "prime_field":
                return self.p
            case _:
                return self.inner.base_modulus

    @property
    def is_commutative_kind(self) -> bool:
        return self.kind in BASE_KINDS or (self.kind == "matrix" and self.dim == 1)

    def label(self) -> str:
        """Short human-readable name, e.g. M2(F2)"""
        match self.kind:
            case "integers_mod":
                return f"Z/{self.m}"
            case "prime_field":
                return f"F{self.p}"
            case "matrix":
                return f"M{self.dim}({self.inner.label()})"
            case "product_opposite":
                inner = self.inner.label()
                return f"{inner}x{inner}op"

    @classmethod
    def parse(cls, data: Any) -> "RingSpec":
        """Validate a JSON-like document, raising SpecInvalidError on failure"""
        if isinstance(data, RingSpec):
            return data

        try:
            return cls.model_validate(data)

        except ValidationError as e:
            raise SpecInvalidError(f"Invalid ring spec: {e.errors()[0]['msg']}", details={"spec": data}) from e


RingSpec.model_rebuild()


# =========================
#        SHORTCUTS
# =========================
def integers_mod(m: int) -> RingSpec:
    return RingSpec.parse({"kind": "integers_mod", "m": m})


def prime_field(p: int) -> RingSpec:
    return RingSpec.parse({"kind": "prime_field", "p": p})


def matrix_ring(dim: int, inner: RingSpec) -> RingSpec:
    return RingSpec.parse({"kind": "matrix", "dim": dim, "inner": inner.model_dump(exclude_none=True)})


def product_opposite(inner: RingSpec) -> RingSpec:
    return RingSpec.parse({"kind": "product_opposite", "inner": inner.model_dump(exclude_none=True)})
