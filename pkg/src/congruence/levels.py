"""
The preelementary subgroup EU(I, Omega) and its normal closure in EU(R, Delta).
"""

from dataclasses import dataclass
from typing import Iterable, Optional

from congruence.membership import Level
from formparam.derived import oriented_points
from formparam.heisenberg import HPoint
from unitary.closure import generate_group
from unitary.generators import distinct_matrices
from unitary.matrix import UMatrix
from utils.config import SETTINGS
from utils.errors import ClosureOverflowError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


def omega_for(level: Level, i: int) -> frozenset[HPoint]:
    """Omega^(-eps(i)): Omega^-1 for positive i, Omega for negative i"""
    factory = level.factory
    return oriented_points(level.omega.elements, level.ctx.quad, factory.orientation(i))


def eu_level_generators(level: Level, reduced: bool = False) -> list[UMatrix]:
    """
    T_ij(x) for x in I and T_i(a) for a in Omega^(-eps(i)); identities are
    dropped. ``reduced`` keeps an additive basis of I and group generators
    of each Omega^(-eps(i)) only.
    """
    factory = level.factory
    if reduced:
        return factory.level_generators(level.ideal, level.omega.elements)

    shorts = factory.short_family(level.ideal)
    extras = factory.extra_family({i: omega_for(level, i) for i in level.ctx.theta.hb})
    return distinct_matrices(shorts + extras)


@dataclass(kw_only=True)
class NormalClosure:
    """
    Conjugates of the level generators, closed under conjugation by the
    conjugators unless truncated. They generate the normal closure; the
    group itself is only materialized on request.
    """

    conjugates: list[UMatrix]
    truncated: bool
    cap: int
    elements: Optional[frozenset[UMatrix]] = None

    def __contains__(self, g: UMatrix) -> bool:
        if self.elements is None:
            raise ValueError("Normal closure was not materialized")
        return g in self.elements

    def summary(self) -> dict:
        return {
            "conjugates": len(self.conjugates),
            "truncated": self.truncated,
            "cap": self.cap,
            "order": len(self.elements) if self.elements is not None else None,
        }


def eu_level_normal_closure(
    level: Level,
    conjugators: Optional[Iterable[UMatrix]] = None,
    cap: Optional[int] = None,
    materialize: bool = False,
) -> NormalClosure:
    """
    Close the preelementary generators under conjugation by ``conjugators``
    (default: reduced EU generators). With ``materialize`` the generated group
    is built too.

    Raises:
        ClosureOverflowError: materialized group above ``cap``
    """
    cap = cap if cap is not None else SETTINGS.closure_cap
    conjugators = list(conjugators) if conjugators is not None else level.factory.reduced_generators()
    start = eu_level_generators(level, reduced=True)

    seen = dict.fromkeys(start)
    frontier = list(start)
    truncated = False
    while frontier and not truncated:
        fresh = []
        for g in frontier:
            for c in conjugators:
                image = g.conj(c)
                if image not in seen:
                    seen[image] = None
                    fresh.append(image)
                    if len(seen) >= cap:
                        truncated = True
                        break
            if truncated:
                break
        frontier = fresh

    if truncated:
        logger.warning(f"⚠️ Conjugate closure stopped at {cap} elements")

    result = NormalClosure(conjugates=list(seen), truncated=truncated, cap=cap)
    if materialize:
        if truncated:
            raise ClosureOverflowError(f"Conjugate closure exceeded {cap} elements", details={"cap": cap})
        result.elements = generate_group(result.conjugates, cap=cap, identity=level.ctx.identity())

    logger.debug(f"📊 Normal closure of level generators: {result.summary()}")
    return result
