from typing import Any, Optional

import numpy as np

from rings import linalg
from rings.finite_ring import FiniteRing
from unitary.theta import Theta
from utils.errors import SizeMismatchError


class UMatrix:
    """
    Immutable (2n+1) x (2n+1) matrix over a finite ring, indexed by Theta.

    Equality and hashing use the raw entries, so matrices can live in sets.
    The inverse is computed once and cached; products of matrices with known
    inverses carry the product of the inverses along.
    """

    __slots__ = ("ring", "theta", "entries", "_key", "_inverse")

    def __init__(self, ring: FiniteRing, entries: np.ndarray, inverse: Optional["UMatrix"] = None):
        entries = np.ascontiguousarray(entries, dtype=np.int32)
        dim = entries.shape[0]
        if entries.shape != (dim, dim) or dim % 2 == 0:
            raise SizeMismatchError(f"Expected an odd square matrix, got shape {entries.shape}")
        entries.setflags(write=False)

        self.ring = ring
        self.theta = Theta(dim // 2)
        self.entries = entries
        self._key = entries.tobytes()
        self._inverse = inverse

    # =========================
    #       CONSTRUCTION
    # =========================
    @classmethod
    def identity(cls, ring: FiniteRing, n: int) -> "UMatrix":
        e = cls(ring, linalg.identity(ring, 2 * n + 1))
        e._inverse = e
        return e

    @classmethod
    def from_units(cls, ring: FiniteRing, n: int, units: dict[tuple[int, int], int]) -> "UMatrix":
        """e + sum of x e^{ij} over ``units``, keys in Theta indices"""
        theta = Theta(n)
        entries = linalg.identity(ring, theta.dim)
        for (i, j), x in units.items():
            p, q = theta.pos(i), theta.pos(j)
            entries[p, q] = ring.a(int(entries[p, q]), x)
        return cls(ring, entries)

    # =========================
    #          ACCESS
    # =========================
    @property
    def n(self) -> int:
        return self.theta.n

    def get(self, i: int, j: int) -> int:
        return int(self.entries[self.theta.pos(i), self.theta.pos(j)])

    def col(self, j: int) -> np.ndarray:
        """Column j as a vector in basis order"""
        return self.entries[:, self.theta.pos(j)]

    def row(self, i: int) -> np.ndarray:
        return self.entries[self.theta.pos(i), :]

    def hb_block(self) -> np.ndarray:
        """Entries with both indices hyperbolic"""
        idx = list(self.theta.hb_positions)
        return self.entries[np.ix_(idx, idx)]

    # =========================
    #        ARITHMETIC
    # =========================
    def __matmul__(self, other: "UMatrix") -> "UMatrix":
        product = UMatrix(self.ring, linalg.matmul(self.ring, self.entries, other.entries))
        if self._inverse is not None and other._inverse is not None:
            product._inverse = UMatrix(self.ring, linalg.matmul(self.ring, other._inverse.entries, self._inverse.entries), inverse=product)
        return product

    def apply(self, v: np.ndarray) -> np.ndarray:
        return linalg.matvec(self.ring, self.entries, v)

    def inverse(self) -> "UMatrix":
        """Two-sided inverse; raises NotInvertibleError when singular"""
        if self._inverse is None:
            self._inverse = UMatrix(self.ring, linalg.invert(self.ring, self.entries), inverse=self)
        return self._inverse

    def conj(self, h: "UMatrix") -> "UMatrix":
        """h self h^-1"""
        return h @ self @ h.inverse()

    def commutator(self, other: "UMatrix") -> "UMatrix":
        """self other self^-1 other^-1"""
        return self @ other @ self.inverse() @ other.inverse()

    def is_identity(self) -> bool:
        return bool((self.entries == linalg.identity(self.ring, self.theta.dim)).all())

    # =========================
    #        PROTOCOLS
    # =========================
    def __eq__(self, other) -> bool:
        return isinstance(other, UMatrix) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "UMatrix") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"UMatrix(n={self.n}, {self.entries.tolist()})"

    def to_list(self) -> list[list[int]]:
        return self.entries.tolist()

    def render(self) -> list[list[Any]]:
        return [[self.ring.render(int(x)) for x in row] for row in self.entries]
