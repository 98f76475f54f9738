from functools import cached_property
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from rings.spec import RingSpec, BASE_KINDS
from utils.config import SETTINGS
from utils.errors import SizeOverflowError, SpecInvalidError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

INDEX_DTYPE = np.int32

# Up to this size every ring axiom is checked over all triples
EXHAUSTIVE_AXIOM_LIMIT = 256

# Rows of the matrix-ring tables computed per numpy batch
TABLE_CHUNK = 256


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=INDEX_DTYPE)
    array.setflags(write=False)
    return array


class FiniteRing:
    """
    A finite associative ring with 1 != 0 given by operation tables.

    Elements are the integers 0..size-1. ``coords`` maps every element to its
    coordinates over the commutative base ring: a scalar for integers mod m,
    a (k, k) block for matrix rings and a pair for products with the opposite
    ring. The tables are numpy arrays; list copies back the scalar helpers.
    """

    def __init__(
        self,
        *,
        spec: RingSpec,
        add: np.ndarray,
        mul: np.ndarray,
        neg: np.ndarray,
        zero: int,
        one: int,
        coords: np.ndarray,
    ):
        self.spec = spec
        self.size = int(add.shape[0])
        self.add = _readonly(add)
        self.mul = _readonly(mul)
        self.neg = _readonly(neg)
        self.zero = int(zero)
        self.one = int(one)
        self.coords = coords
        self.coords.setflags(write=False)

        self._add = self.add.tolist()
        self._mul = self.mul.tolist()
        self._neg = self.neg.tolist()

    def __repr__(self) -> str:
        return f"FiniteRing({self.spec.label()}, size={self.size})"

    # =========================
    #      SCALAR HELPERS
    # =========================
    def a(self, x: int, y: int) -> int:
        return self._add[x][y]

    def s(self, x: int, y: int) -> int:
        return self._add[x][self._neg[y]]

    def m(self, *factors: int) -> int:
        result = self.one
        for factor in factors:
            result = self._mul[result][factor]
        return result

    def n(self, x: int) -> int:
        return self._neg[x]

    def total(self, terms: Iterable[int]) -> int:
        result = self.zero
        for term in terms:
            result = self._add[result][term]
        return result

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def minus_one(self) -> int:
        return self._neg[self.one]

    # =========================
    #        STRUCTURE
    # =========================
    @cached_property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def unit_mask(self) -> np.ndarray:
        hits = self.mul == self.one
        # Finite rings are Dedekind-finite: a left inverse is two-sided
        return hits.any(axis=0) & hits.any(axis=1)

    @cached_property
    def units(self) -> frozenset[int]:
        return frozenset(int(x) for x in np.nonzero(self.unit_mask)[0])

    def is_unit(self, x: int) -> bool:
        return bool(self.unit_mask[x])

    def left_inverses(self, x: int) -> frozenset[int]:
        """All y with y*x = 1"""
        return frozenset(int(y) for y in np.nonzero(self.mul[:, x] == self.one)[0])

    def inverse(self, x: int) -> Optional[int]:
        hits = np.nonzero(self.mul[:, x] == self.one)[0]
        return int(hits[0]) if hits.size else None

    # =========================
    #      AXIOM CHECKING
    # =========================
    def check_axioms(self, samples: int = 20000, seed: int = 0) -> list[str]:
        """
        Verify the ring axioms. Exhaustive up to EXHAUSTIVE_AXIOM_LIMIT
        elements, sampled over random triples above.

        Returns:
            list of violated axiom names (empty when the tables form a ring)
        """
        violations: list[str] = []
        add, mul, neg = self.add, self.mul, self.neg
        size = self.size
        ar = np.arange(size, dtype=INDEX_DTYPE)

        if self.one == self.zero:
            violations.append("one-equals-zero")
        if not (add == add.T).all():
            violations.append("add-commutative")
        if not (add[self.zero] == ar).all():
            violations.append("add-identity")
        if not (add[ar, neg] == self.zero).all():
            violations.append("add-inverse")
        if not ((mul[self.one] == ar).all() and (mul[:, self.one] == ar).all()):
            violations.append("mul-identity")

        if size <= EXHAUSTIVE_AXIOM_LIMIT:
            for x in range(size):
                row, col = mul[x], mul[:, x]
                if not (add[add[x][:, None], ar[None, :]] == add[x][add]).all():
                    violations.append("add-associative")
                if not (mul[mul[x][:, None], ar[None, :]] == mul[x][mul]).all():
                    violations.append("mul-associative")
                if not (row[add] == add[row[:, None], row[None, :]]).all():
                    violations.append("left-distributive")
                if not (col[add] == add[col[:, None], col[None, :]]).all():
                    violations.append("right-distributive")
                if violations:
                    break

        else:
            rng = np.random.default_rng(seed)
            x, y, z = rng.integers(0, size, size=(3, samples))
            if not (add[add[x, y], z] == add[x, add[y, z]]).all():
                violations.append("add-associative")
            if not (mul[mul[x, y], z] == mul[x, mul[y, z]]).all():
                violations.append("mul-associative")
            if not (mul[x, add[y, z]] == add[mul[x, y], mul[x, z]]).all():
                violations.append("left-distributive")
            if not (mul[add[y, z], x] == add[mul[y, x], mul[z, x]]).all():
                violations.append("right-distributive")

        return sorted(set(violations))

    # =========================
    #        RENDERING
    # =========================
    def render(self, x: int) -> Any:
        """Canonical human-readable form of an element"""
        match self.spec.kind:
            case "integers_mod" | "prime_field":
                return int(x)
            case "matrix":
                return self.coords[x].tolist()
            case "product_opposite":
                return [int(c) for c in self.coords[x]]

    def parse_element(self, value: Any) -> int:
        """Accept an element index, a name, or the rendered form"""
        match value:
            case bool():
                raise SpecInvalidError(f"Not an element reference: {value!r}")
            case int() if 0 <= value < self.size:
                return value
            case "zero" | "0":
                return self.zero
            case "one" | "e" | "1":
                return self.one
            case "minus_one" | "-1":
                return self.minus_one
            case list() | tuple():
                return self._encode_rendered(value)
            case _:
                raise SpecInvalidError(f"Unknown element reference {value!r} for {self.spec.label()}")

    def _encode_rendered(self, value: Sequence) -> int:
        q = self.spec.base_modulus
        flat = np.asarray(value, dtype=np.int64).reshape(-1) % q
        expected = self.coords[0].size
        if flat.size != expected:
            raise SpecInvalidError(f"Expected {expected} coordinates, got {flat.size}")
        weights = q ** np.arange(expected - 1, -1, -1, dtype=np.int64)
        return int((flat * weights).sum())


# =========================
#        CONSTRUCTION
# =========================
def _encode_digits(digits: np.ndarray, q: int) -> np.ndarray:
    """Row-major base-q encoding, first digit most significant"""
    width = digits.shape[-1]
    weights = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (digits.astype(np.int64) * weights).sum(axis=-1)


def _decode_digits(size: int, width: int, q: int) -> np.ndarray:
    idx = np.arange(size, dtype=np.int64)
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def _carrier_size(spec: RingSpec) -> int:
    match spec.kind:
        case "integers_mod" | "prime_field":
            return spec.base_modulus
        case "matrix":
            return spec.base_modulus ** (spec.dim * spec.dim)
        case "product_opposite":
            return spec.base_modulus**2


def build_ring(spec: RingSpec | dict, cap: Optional[int] = None) -> FiniteRing:
    """
    Build and validate the ring described by ``spec``.

    Raises:
        SpecInvalidError: malformed spec or tables failing the ring axioms
        SizeOverflowError: carrier larger than ``cap`` (default from settings)
    """
    spec = RingSpec.parse(spec)
    cap = SETTINGS.ring_cap if cap is None else cap

    size = _carrier_size(spec)
    if size > cap:
        raise SizeOverflowError(
            f"{spec.label()} has {size} elements, above the cap of {cap}",
            details={"size": size, "cap": cap},
        )

    q = spec.base_modulus

    match spec.kind:
        case kind if kind in BASE_KINDS:
            ar = np.arange(q, dtype=np.int64)
            add = (ar[:, None] + ar[None, :]) % q
            mul = (ar[:, None] * ar[None, :]) % q
            neg = (-ar) % q
            ring = FiniteRing(spec=spec, add=add, mul=mul, neg=neg, zero=0, one=1 % q, coords=ar.copy())

        case "matrix":
            k = spec.dim
            digits = _decode_digits(size, k * k, q)
            blocks = digits.reshape(size, k, k)
            add = np.empty((size, size), dtype=np.int64)
            mul = np.empty((size, size), dtype=np.int64)
            for start in range(0, size, TABLE_CHUNK):
                stop = min(start + TABLE_CHUNK, size)
                add[start:stop] = _encode_digits((digits[start:stop, None, :] + digits[None, :, :]) % q, q)
                prod = np.einsum("aij,bjk->abik", blocks[start:stop], blocks) % q
                mul[start:stop] = _encode_digits(prod.reshape(stop - start, size, k * k), q)
            neg = _encode_digits((-digits) % q, q)
            one = int(_encode_digits(np.eye(k, dtype=np.int64).reshape(1, -1), q)[0])
            ring = FiniteRing(spec=spec, add=add, mul=mul, neg=neg, zero=0, one=one, coords=blocks)

        case "product_opposite":
            pairs = _decode_digits(size, 2, q)
            add = _encode_digits((pairs[:, None, :] + pairs[None, :, :]) % q, q)
            # (x1, y1)(x2, y2) = (x1 x2, y2 y1); the base is commutative
            mul = _encode_digits((pairs[:, None, :] * pairs[None, :, :]) % q, q)
            neg = _encode_digits((-pairs) % q, q)
            ring = FiniteRing(spec=spec, add=add, mul=mul, neg=neg, zero=0, one=q + 1, coords=pairs)

    violations = ring.check_axioms(seed=SETTINGS.seed)
    if violations:
        raise SpecInvalidError(
            f"Tables for {spec.label()} violate ring axioms: {violations}",
            details={"violations": violations},
        )

    logger.debug(f"🔧 Built ring {spec.label()} with {ring.size} elements")
    return ring
