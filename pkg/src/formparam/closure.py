"""
Closures inside the Heisenberg quasimodule.

A subquasimodule is a subgroup of (R x R, +) closed under every scaling
a -> a.r. Scaling is a group endomorphism and (a.r).s = a.(rs), so the
subquasimodule generated by G equals the subgroup generated by
{g.r | g in G, r in R}. Subgroups are grown one generator at a time and
keep a short generator list, which later closures and certificates reuse.
"""

from dataclasses import dataclass
from typing import Iterable, Optional

from formparam.heisenberg import HeisenbergOps, HPoint
from utils.errors import ClosureOverflowError, EnumerationOverflowError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(frozen=True, kw_only=True)
class ClosedSet:
    """A finite subgroup of (R x R, +) with a generating list"""

    elements: frozenset[HPoint]
    generators: tuple[HPoint, ...]

    def __contains__(self, point) -> bool:
        return point in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list[HPoint]:
        return sorted(self.elements)


def _extend(
    ops: HeisenbergOps,
    elements: set[HPoint],
    generators: list[HPoint],
    new: HPoint,
    cap: int,
) -> None:
    """Grow ``elements`` in place to the subgroup generated by it and ``new``"""
    generators.append(new)
    queue = list(elements)
    while queue:
        current = queue.pop()
        for g in generators:
            candidate = ops.plus(current, g)
            if candidate not in elements:
                elements.add(candidate)
                queue.append(candidate)
                if len(elements) > cap:
                    raise ClosureOverflowError(
                        f"Closure exceeded {cap} points",
                        details={"cap": cap},
                    )


def close_subgroup(
    ops: HeisenbergOps,
    gens: Iterable[HPoint],
    base: Optional[ClosedSet] = None,
    cap: Optional[int] = None,
) -> ClosedSet:
    """Least subgroup of (R x R, +) containing ``gens`` (and ``base``)"""
    cap = ops.ring.size**2 if cap is None else cap
    elements: set[HPoint] = set(base.elements) if base else {ops.zero}
    generators: list[HPoint] = list(base.generators) if base else []

    for g in gens:
        if g not in elements:
            _extend(ops, elements, generators, HPoint(*g), cap)

    return ClosedSet(elements=frozenset(elements), generators=tuple(generators))


def scaled_orbit(ops: HeisenbergOps, point: HPoint, scalars: Iterable[int]) -> list[HPoint]:
    return [ops.scale(point, r) for r in scalars]


def close_subquasimodule(
    ops: HeisenbergOps,
    gens: Iterable[HPoint],
    base: Optional[ClosedSet] = None,
    cap: Optional[int] = None,
) -> ClosedSet:
    """
    Least R-subquasimodule containing ``gens``; ``base`` must already be one.

    Raises:
        ClosureOverflowError: more than ``cap`` points (default |R|^2)
    """
    scalars = list(ops.ring.elements)
    current = base
    for g in gens:
        if current is not None and g in current:
            continue
        current = close_subgroup(ops, scaled_orbit(ops, HPoint(*g), scalars), base=current, cap=cap)

    if current is None:
        current = ClosedSet(elements=frozenset({ops.zero}), generators=())
    return current


# =========================
#       CERTIFICATES
# =========================
def subquasimodule_violations(ops: HeisenbergOps, points: frozenset[HPoint], generators: Optional[Iterable[HPoint]] = None) -> list[str]:
    """
    Laws of an R-subquasimodule that ``points`` breaks. With ``generators``
    (a generating set of ``points`` as a group) closure is checked on
    generators only, which suffices because translations and scalings are
    homomorphisms.
    """
    problems: list[str] = []
    if ops.zero not in points:
        problems.append("missing-zero")

    gens = list(generators) if generators is not None else list(points)
    if any(ops.plus(a, g) not in points for a in points for g in gens):
        problems.append("not-closed-under-plus")
    if any(ops.neg(g) not in points for g in gens):
        problems.append("not-closed-under-neg")
    if any(ops.scale(g, r) not in points for g in gens for r in ops.ring.elements):
        problems.append("not-closed-under-scaling")

    return problems


def normality_violations(ops: HeisenbergOps, points: frozenset[HPoint], within: Iterable[HPoint], generators: Optional[Iterable[HPoint]] = None) -> list[HPoint]:
    """Conjugators g from ``within`` with g + a - g outside ``points`` for some generator a"""
    gens = list(generators) if generators is not None else list(points)
    return [g for g in within if any(ops.conjugate(g, a) not in points for a in gens)]


def plane_generators(ops: HeisenbergOps) -> list[HPoint]:
    """(x, 0) and (0, y) generate R x R because (x, 0) + (0, y) = (x, y)"""
    r = ops.ring
    return [HPoint(x, r.zero) for x in r.elements] + [HPoint(r.zero, y) for y in r.elements]


# =========================
#       ENUMERATION
# =========================
def enumerate_between(
    ops: HeisenbergOps,
    lower: ClosedSet,
    upper: frozenset[HPoint],
    cap: int,
) -> list[ClosedSet]:
    """
    All subquasimodules P with lower <= P <= upper, where ``lower`` is a
    subquasimodule and ``upper`` is closed. Every such P is reached from
    ``lower`` by adding one point of ``upper`` at a time.

    Raises:
        EnumerationOverflowError: more than ``cap`` results
    """
    found: dict[frozenset[HPoint], ClosedSet] = {lower.elements: lower}
    queue = [lower]
    outside = sorted(upper)

    while queue:
        current = queue.pop()
        for point in outside:
            if point in current.elements:
                continue
            extended = close_subquasimodule(ops, [point], base=current)
            if extended.elements in found:
                continue
            found[extended.elements] = extended
            queue.append(extended)
            if len(found) > cap:
                raise EnumerationOverflowError(
                    f"More than {cap} subquasimodules between the bounds",
                    details={"cap": cap},
                )

    results = sorted(found.values(), key=lambda s: (len(s), s.sorted()))
    logger.debug(f"📊 Enumerated {len(results)} subquasimodules between bounds of size {len(lower)} and {len(upper)}")
    return results
