"""
Index set {-n, ..., -1, 0, 1, ..., n} of the odd hyperbolic module.

Array positions follow the basis order (e_1, ..., e_n, e_0, e_-n, ..., e_-1):
i > 0 sits at i - 1, 0 sits at n, and i < 0 sits at 2n + 1 + i. No other
module converts between indices and positions.
"""

from dataclasses import dataclass
from functools import cached_property

from utils.errors import BadIndicesError


def eps(i: int) -> int:
    """+1 on positive indices, -1 on negative ones"""
    if i == 0:
        raise BadIndicesError("eps is undefined at index 0")
    return 1 if i > 0 else -1


@dataclass(frozen=True)
class Theta:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise BadIndicesError(f"n must be at least 1, got {self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    def pos(self, i: int) -> int:
        n = self.n
        if not -n <= i <= n:
            raise BadIndicesError(f"Index {i} outside -{n}..{n}")
        if i > 0:
            return i - 1
        if i == 0:
            return n
        return 2 * n + 1 + i

    @cached_property
    def order(self) -> tuple[int, ...]:
        """All indices in basis order"""
        n = self.n
        return tuple(range(1, n + 1)) + (0,) + tuple(range(-n, 0))

    @cached_property
    def hb(self) -> tuple[int, ...]:
        """Hyperbolic indices (everything except 0) in basis order"""
        return tuple(i for i in self.order if i != 0)

    @cached_property
    def plus(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @cached_property
    def minus(self) -> tuple[int, ...]:
        return tuple(range(-1, -self.n - 1, -1))

    @cached_property
    def hb_positions(self) -> tuple[int, ...]:
        return tuple(self.pos(i) for i in self.hb)

    def check_pair(self, i: int, j: int) -> None:
        """Short-root index pair: both hyperbolic and i != +-j"""
        if i == 0 or j == 0 or i == j or i == -j:
            raise BadIndicesError(f"Indices ({i}, {j}) need i, j != 0 and i != +-j")
        self.pos(i), self.pos(j)

    def check_hb(self, i: int) -> None:
        if i == 0:
            raise BadIndicesError("Index 0 is not hyperbolic")
        self.pos(i)

    def short_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.hb for j in self.hb if i != j and i != -j]
