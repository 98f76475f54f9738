"""
Additive subgroups and ideals of a finite ring, as frozensets of element indices.
"""

from typing import Iterable, Literal, Optional

import numpy as np

from rings.finite_ring import FiniteRing
from rings.involution import Involution
from utils.errors import EnumerationOverflowError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

Side = Literal["left", "right", "two"]


def additive_closure(ring: FiniteRing, gens: Iterable[int], base: Optional[frozenset[int]] = None) -> frozenset[int]:
    """Subgroup of (R, +) generated by ``gens`` (and ``base``)"""
    members = np.zeros(ring.size, dtype=bool)
    members[ring.zero] = True
    if base:
        members[list(base)] = True

    for g in gens:
        if members[g]:
            continue
        multiples = [ring.zero]
        current = g
        while current != ring.zero:
            multiples.append(current)
            current = ring.a(current, g)
        present = np.nonzero(members)[0]
        members[ring.add[present[:, None], np.asarray(multiples)[None, :]].ravel()] = True

    return frozenset(int(x) for x in np.nonzero(members)[0])


def ideal_generated(ring: FiniteRing, gens: Iterable[int], side: Side = "two") -> frozenset[int]:
    """Left (R g), right (g R) or two-sided (R g R) ideal generated by ``gens``"""
    gens = sorted(set(gens))
    if not gens:
        return frozenset({ring.zero})

    g = np.asarray(gens)
    match side:
        case "left":
            spanning = ring.mul[:, g]
        case "right":
            spanning = ring.mul[g, :]
        case "two":
            left = np.unique(ring.mul[:, g])
            spanning = ring.mul[left, :]

    return additive_closure(ring, np.unique(spanning).tolist())


def is_ideal(ring: FiniteRing, subset: frozenset[int], side: Side = "two") -> bool:
    if ring.zero not in subset:
        return False
    s = np.asarray(sorted(subset))
    if not np.isin(ring.add[s[:, None], s[None, :]], s).all():
        return False
    if side in ("left", "two") and not np.isin(ring.mul[:, s], s).all():
        return False
    if side in ("right", "two") and not np.isin(ring.mul[s, :], s).all():
        return False
    return True


def bar_set(bar: Involution, subset: Iterable[int]) -> frozenset[int]:
    return frozenset(bar(x) for x in subset)


def is_left_unimodular(ring: FiniteRing, entries: Iterable[int]) -> bool:
    """True iff some row v has sum(v_i u_i) = 1, i.e. 1 lies in the left ideal of the entries"""
    return ring.one in ideal_generated(ring, entries, side="left")


def enumerate_ideals(
    ring: FiniteRing,
    bar: Optional[Involution] = None,
    side: Side = "two",
    cap: int = 4096,
) -> list[frozenset[int]]:
    """
    All ideals of the given side; with ``bar``, only those satisfying bar(I) = I.

    Raises:
        EnumerationOverflowError: more than ``cap`` ideals
    """
    def generated(points: Iterable[int]) -> frozenset[int]:
        points = set(points)
        if bar is not None:
            points |= {bar(x) for x in points}
        return ideal_generated(ring, points, side)

    start = frozenset({ring.zero})
    found = {start}
    queue = [start]
    while queue:
        current = queue.pop()
        for x in ring.elements:
            if x in current:
                continue
            extended = generated(set(current) | {x})
            if extended not in found:
                found.add(extended)
                queue.append(extended)
                if len(found) > cap:
                    raise EnumerationOverflowError(f"More than {cap} ideals", details={"cap": cap})

    return sorted(found, key=lambda s: (len(s), sorted(s)))
