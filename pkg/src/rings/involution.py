from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from rings.finite_ring import FiniteRing, INDEX_DTYPE, _encode_digits
from utils.errors import IncompatibleRingError, SpecInvalidError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Involution:
    """An anti-automorphism x -> bar(x) of a finite ring, stored as a table"""

    name: str
    table: np.ndarray
    _lookup: list = field(init=False, repr=False)

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=INDEX_DTYPE)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_lookup", table.tolist())

    def __call__(self, x: int) -> int:
        return self._lookup[x]

    def __eq__(self, other) -> bool:
        return isinstance(other, Involution) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def violations(self, ring: FiniteRing) -> list[str]:
        """Names of the anti-automorphism laws this table breaks on ``ring``"""
        bar = self.table
        problems: list[str] = []

        if bar.shape != (ring.size,):
            return ["wrong-size"]
        if len(np.unique(bar)) != ring.size:
            problems.append("not-bijective")
        if bar[ring.one] != ring.one:
            problems.append("bar-one")
        if not (bar[ring.add] == ring.add[bar[:, None], bar[None, :]]).all():
            problems.append("not-additive")
        # bar(xy) = bar(y) bar(x)
        if not (bar[ring.mul] == ring.mul[bar[None, :], bar[:, None]]).all():
            problems.append("not-anti-multiplicative")

        return problems


def _validated(ring: FiniteRing, involution: Involution) -> Involution:
    problems = involution.violations(ring)
    if problems:
        raise SpecInvalidError(
            f"Involution '{involution.name}' is not an anti-automorphism of {ring.spec.label()}: {problems}",
            details={"violations": problems},
        )
    return involution


def standard_involution(ring: FiniteRing, name: str) -> Involution:
    """
    Named involutions: ``identity`` (commutative rings), ``transpose``
    (matrix rings) and ``swap`` (products with the opposite ring).

    Raises:
        IncompatibleRingError: the name does not apply to this ring
    """
    kind = ring.spec.kind

    match name:
        case "identity" | "id":
            if not ring.is_commutative:
                raise IncompatibleRingError(f"identity is not an involution of the noncommutative ring {ring.spec.label()}")
            table = np.arange(ring.size)

        case "transpose":
            if kind != "matrix":
                raise IncompatibleRingError(f"transpose needs a matrix ring, got {ring.spec.label()}")
            k = ring.spec.dim
            transposed = np.transpose(ring.coords, (0, 2, 1)).reshape(ring.size, k * k)
            table = _encode_digits(transposed, ring.spec.base_modulus)

        case "swap":
            if kind != "product_opposite":
                raise IncompatibleRingError(f"swap needs a product with the opposite ring, got {ring.spec.label()}")
            table = _encode_digits(ring.coords[:, ::-1], ring.spec.base_modulus)

        case _:
            raise SpecInvalidError(f"Unknown involution name '{name}'")

    return _validated(ring, Involution(name=name, table=table))


def involution_from_table(ring: FiniteRing, table: Sequence[int], name: str = "table") -> Involution:
    return _validated(ring, Involution(name=name, table=np.asarray(table)))
