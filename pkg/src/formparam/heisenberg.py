from enum import IntEnum
from functools import lru_cache
from typing import Iterable, NamedTuple

from rings.quadruple import OddQuadruple, inverse_quadruple


class HPoint(NamedTuple):
    """An element (x, y) of the Heisenberg quasimodule on R x R"""

    x: int
    y: int


class Orientation(IntEnum):
    """+1 uses the quadruple itself, -1 its inverse quadruple"""

    PLUS = 1
    MINUS = -1


class HeisenbergOps:
    """
    Twisted group law, scaling and trace on R x R for one odd quadruple:

        (x1, y1) + (x2, y2) = (x1 + x2, y1 + y2 - bar(x1) mu x2)
        (x, y) . r          = (x r, bar(r) y r)
        tr(x, y)            = bar(x) mu x + y + bar(y) lam
    """

    def __init__(self, quad: OddQuadruple):
        self.quad = quad
        self.ring = quad.ring
        self.zero = HPoint(quad.ring.zero, quad.ring.zero)

    def plus(self, a: HPoint, b: HPoint) -> HPoint:
        r, bar, mu = self.ring, self.quad.bar, self.quad.mu
        return HPoint(r.a(a.x, b.x), r.s(r.a(a.y, b.y), r.m(bar(a.x), mu, b.x)))

    def neg(self, a: HPoint) -> HPoint:
        r, bar, mu = self.ring, self.quad.bar, self.quad.mu
        return HPoint(r.n(a.x), r.s(r.n(a.y), r.m(bar(a.x), mu, a.x)))

    def minus(self, a: HPoint, b: HPoint) -> HPoint:
        return self.plus(a, self.neg(b))

    def scale(self, a: HPoint, s: int) -> HPoint:
        r = self.ring
        return HPoint(r.m(a.x, s), r.m(self.quad.bar(s), a.y, s))

    def trace(self, a: HPoint) -> int:
        r, q = self.ring, self.quad
        return r.total((r.m(q.bar(a.x), q.mu, a.x), a.y, r.m(q.bar(a.y), q.lam)))

    def commutator(self, a: HPoint, b: HPoint) -> HPoint:
        """a + b - a - b"""
        return self.plus(self.plus(self.plus(a, b), self.neg(a)), self.neg(b))

    def total(self, points: Iterable[HPoint]) -> HPoint:
        result = self.zero
        for point in points:
            result = self.plus(result, point)
        return result

    def conjugate(self, g: HPoint, a: HPoint) -> HPoint:
        """g + a - g"""
        return self.plus(self.plus(g, a), self.neg(g))


@lru_cache(maxsize=64)
def heisenberg(quad: OddQuadruple, orientation: Orientation = Orientation.PLUS) -> HeisenbergOps:
    """Operations for ``quad`` (PLUS) or for its inverse quadruple (MINUS)"""
    if orientation == Orientation.MINUS:
        return HeisenbergOps(inverse_quadruple(quad))
    return HeisenbergOps(quad)


# =========================
#    FUNCTIONAL WRAPPERS
# =========================
def hplus(quad: OddQuadruple, a: HPoint, b: HPoint, o: Orientation = Orientation.PLUS) -> HPoint:
    return heisenberg(quad, o).plus(a, b)


def hneg(quad: OddQuadruple, a: HPoint, o: Orientation = Orientation.PLUS) -> HPoint:
    return heisenberg(quad, o).neg(a)


def hminus(quad: OddQuadruple, a: HPoint, b: HPoint, o: Orientation = Orientation.PLUS) -> HPoint:
    return heisenberg(quad, o).minus(a, b)


def hscale(quad: OddQuadruple, a: HPoint, s: int, o: Orientation = Orientation.PLUS) -> HPoint:
    return heisenberg(quad, o).scale(a, s)


def trace(quad: OddQuadruple, a: HPoint, o: Orientation = Orientation.PLUS) -> int:
    return heisenberg(quad, o).trace(a)
