"""
Elementary matrices of U_2n+1(R, Delta).

    T_ij(x)   = e + x e^{ij} - lam^((eps(j)-1)/2) bar(x) lam^((1-eps(i))/2) e^{-j,-i}
    T_i(x, y) = e + x e^{0,-i} - lam^(-(1+eps(i))/2) bar(x) mu e^{i0} + y e^{i,-i}
    P_ij      = T_ij(1) T_ji(-1) T_ij(1)

T_i(x, y) needs (x, y) in Delta^(-eps(i)), i.e. Delta^-1 for positive i and
Delta for negative i. Every matrix is built with its inverse attached.
"""

from functools import cached_property
from typing import Iterable, Optional

from formparam.closure import close_subgroup
from formparam.derived import inverse_parameter, oriented_points
from formparam.heisenberg import HeisenbergOps, HPoint, Orientation, heisenberg
from formparam.ideals import additive_closure
from rings.finite_ring import FiniteRing
from unitary.forms import FormsContext
from unitary.matrix import UMatrix
from unitary.theta import eps
from utils.errors import PointNotInParameterError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


def additive_basis(ring: FiniteRing, subset: Optional[Iterable[int]] = None) -> list[int]:
    """A small list of elements whose additive span is ``subset`` (default: all of R)"""
    pool = sorted(subset) if subset is not None else list(ring.elements)
    basis: list[int] = []
    span = frozenset({ring.zero})
    for x in pool:
        if x not in span:
            basis.append(x)
            span = additive_closure(ring, basis)
    return basis


class ElementaryFactory:
    """Builds and caches the elementary generators for one FormsContext"""

    def __init__(self, ctx: FormsContext):
        self.ctx = ctx
        self.ring = ctx.ring
        self.quad = ctx.quad
        self.theta = ctx.theta
        self._cache: dict[tuple, UMatrix] = {}

    # =========================
    #   ORIENTED PARAMETERS
    # =========================
    def orientation(self, i: int) -> Orientation:
        """Orientation -eps(i) of the parameter T_i draws from"""
        return Orientation(-eps(i))

    def ops_for(self, i: int) -> HeisenbergOps:
        return heisenberg(self.quad, self.orientation(i))

    @cached_property
    def inverse_delta(self):
        return inverse_parameter(self.ctx.delta)

    def parameter_for(self, i: int) -> frozenset[HPoint]:
        """Delta^(-eps(i))"""
        if self.orientation(i) == Orientation.MINUS:
            return self.inverse_delta.elements
        return self.ctx.delta.elements

    def parameter_generators(self, i: int) -> tuple[HPoint, ...]:
        if self.orientation(i) == Orientation.MINUS:
            return self.inverse_delta.generators
        return self.ctx.delta.generators

    # =========================
    #        GENERATORS
    # =========================
    def short_entries(self, i: int, j: int, x: int) -> dict[tuple[int, int], int]:
        r, q = self.ring, self.quad
        partner = r.m(q.lam_pow((eps(j) - 1) // 2), q.bar(x), q.lam_pow((1 - eps(i)) // 2))
        return {(i, j): x, (-j, -i): r.n(partner)}

    def short(self, i: int, j: int, x: int) -> UMatrix:
        """T_ij(x)"""
        key = ("short", i, j, x)
        if key not in self._cache:
            self.theta.check_pair(i, j)
            matrix = UMatrix.from_units(self.ring, self.theta.n, self.short_entries(i, j, x))
            inverse = UMatrix.from_units(self.ring, self.theta.n, self.short_entries(i, j, self.ring.n(x)))
            matrix._inverse, inverse._inverse = inverse, matrix
            self._cache[key] = matrix
        return self._cache[key]

    def extra_entries(self, i: int, a: HPoint) -> dict[tuple[int, int], int]:
        r, q = self.ring, self.quad
        lower = r.m(q.lam_pow(-(1 + eps(i)) // 2), q.bar(a.x), q.mu)
        return {(0, -i): a.x, (i, 0): r.n(lower), (i, -i): a.y}

    def extra(self, i: int, a: tuple[int, int] | HPoint) -> UMatrix:
        """
        T_i(x, y)

        Raises:
            PointNotInParameterError: (x, y) is not in Delta^(-eps(i))
        """
        a = HPoint(*a)
        key = ("extra", i, a)
        if key not in self._cache:
            self.theta.check_hb(i)
            if a not in self.parameter_for(i):
                raise PointNotInParameterError(
                    f"T_{i}({a.x}, {a.y}) needs a point of Delta^{-eps(i)}",
                    details={"i": i, "point": list(a), "orientation": -eps(i)},
                )
            matrix = self._extra_unchecked(i, a)
            inverse = self._extra_unchecked(i, self.ops_for(i).neg(a))
            matrix._inverse, inverse._inverse = inverse, matrix
            self._cache[key] = matrix
        return self._cache[key]

    def _extra_unchecked(self, i: int, a: HPoint) -> UMatrix:
        return UMatrix.from_units(self.ring, self.theta.n, self.extra_entries(i, a))

    def long(self, i: int, y: int) -> UMatrix:
        """T_i(0, y)"""
        return self.extra(i, HPoint(self.ring.zero, y))

    def permutation(self, i: int, j: int) -> UMatrix:
        """P_ij; its inverse is P_ji"""
        key = ("P", i, j)
        if key not in self._cache:
            one = self.ring.one
            self._cache[key] = self.short(i, j, one) @ self.short(j, i, self.ring.n(one)) @ self.short(i, j, one)
        return self._cache[key]

    # =========================
    #        FAMILIES
    # =========================
    def short_family(self, values: Iterable[int]) -> list[UMatrix]:
        values = sorted(set(values))
        return [self.short(i, j, x) for i, j in self.theta.short_pairs() for x in values]

    def extra_family(self, points_for: dict[int, Iterable[HPoint]]) -> list[UMatrix]:
        return [self.extra(i, a) for i in self.theta.hb for a in sorted(points_for[i])]

    def all_generators(self) -> list[UMatrix]:
        """Every T_ij(x) and every T_i(a)"""
        extras = {i: self.parameter_for(i) for i in self.theta.hb}
        return distinct_matrices(self.short_family(self.ring.elements) + self.extra_family(extras))

    def reduced_generators(self) -> list[UMatrix]:
        """Generators of EU over an additive basis of R and the generators of each Delta^(-eps(i))"""
        extras = {i: self.parameter_generators(i) for i in self.theta.hb}
        return distinct_matrices(self.short_family(additive_basis(self.ring)) + self.extra_family(extras))

    def level_generators(self, ideal: Iterable[int], omega: Iterable[HPoint]) -> list[UMatrix]:
        """
        T_ij(x) for x in an additive basis of I and T_i(a) for generators a
        of Omega^(-eps(i)).
        """
        omega = frozenset(omega)
        extras: dict[int, tuple[HPoint, ...]] = {}
        for sign in (Orientation.PLUS, Orientation.MINUS):
            points = oriented_points(omega, self.quad, sign)
            gens = close_subgroup(heisenberg(self.quad, sign), sorted(points)).generators
            for i in self.theta.hb:
                if self.orientation(i) == sign:
                    extras[i] = gens

        shorts = self.short_family(additive_basis(self.ring, ideal))
        return distinct_matrices(shorts + self.extra_family(extras))


def distinct_matrices(matrices: Iterable[UMatrix]) -> list[UMatrix]:
    seen: dict[UMatrix, None] = {}
    for m in matrices:
        if not m.is_identity():
            seen.setdefault(m, None)
    return list(seen)
