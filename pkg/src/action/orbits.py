"""
Orbits of the conjugation action on the relative form parameters for I.

Blocks are the orbits of the subgroup generated by the supplied witnesses
and the elementary generators. They are labeled "orbit" only when the
witnesses are the whole unitary group, "reachable-closure" otherwise.
"""

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from congruence.membership import conjugated_omega, make_level
from domain import CheckResult
from formparam.closure import ClosedSet
from formparam.heisenberg import HPoint
from formparam.parameters import (
    enumerate_relative_form_parameters,
    make_odd_form_ideal,
    omega_max,
    points_digest,
)
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.words import matrix_token
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(kw_only=True)
class ROFPLattice:
    """The relative form parameters for I in canonical (size, points) order"""

    ideal: frozenset[int]
    parameters: list[ClosedSet]

    def index_of(self, points: frozenset[HPoint]) -> int:
        for k, p in enumerate(self.parameters):
            if p.elements == points:
                return k
        raise KeyError("Point set is not a relative form parameter of this lattice")

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.parameters) - 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "ideal": sorted(int(x) for x in self.ideal),
            "parameters": [{"index": k, "size": len(p), "digest": points_digest(p.elements)} for k, p in enumerate(self.parameters)],
        }


def rofp_lattice(ctx: FormsContext, ideal: Iterable[int], cap: Optional[int] = None) -> ROFPLattice:
    """
    Raises:
        EnumerationOverflowError: more than ``cap`` parameters
    """
    ideal = frozenset(int(x) for x in ideal)
    return ROFPLattice(ideal=ideal, parameters=enumerate_relative_form_parameters(ctx.delta, ideal, cap))


@dataclass(kw_only=True)
class OrbitPartition:
    lattice: ROFPLattice
    blocks: list[list[int]]
    witnesses: dict[tuple[int, int], UMatrix]
    label: str
    certificate: CheckResult
    notes: dict[str, Any] = field(default_factory=dict)

    def block_of(self, k: int) -> list[int]:
        return next(b for b in self.blocks if k in b)

    @property
    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def to_dict(self) -> dict[str, Any]:
        digests = [points_digest(p.elements) for p in self.lattice.parameters]
        return {
            "label": self.label,
            "lattice": self.lattice.to_dict(),
            "blocks": [[digests[k] for k in block] for block in self.blocks],
            "block_indices": self.blocks,
            "witnesses": [
                {"from": a, "to": b, "element": matrix_token(sigma)} for (a, b), sigma in sorted(self.witnesses.items())
            ],
            "certificate": self.certificate.to_dict(),
            "notes": self.notes,
        }


def orbits(
    ctx: FormsContext,
    ideal: Iterable[int],
    witnesses: Sequence[UMatrix] = (),
    include_elementary: bool = True,
    full_group: bool = False,
    cap: Optional[int] = None,
) -> OrbitPartition:
    """
    Partition of the lattice for I by the subgroup generated by ``witnesses``
    (plus the elementary generators). Each ordered pair inside a block gets a
    connecting element sigma with ^sigma Omega_a = Omega_b.

    Raises:
        EnumerationOverflowError: the lattice has more than ``cap`` parameters
    """
    lattice = rofp_lattice(ctx, ideal, cap)
    levels = [make_level(ctx, make_odd_form_ideal(ctx.delta, lattice.ideal, p)) for p in lattice.parameters]
    actors = list(witnesses)
    if include_elementary:
        actors += ElementaryFactory(ctx).reduced_generators()

    def act(sigma: UMatrix, k: int) -> int:
        return lattice.index_of(conjugated_omega(sigma, levels[k]).elements)

    # Breadth-first from each unvisited parameter; every actor is a permutation,
    # so forward reachability is the orbit of the generated subgroup
    reach: dict[int, dict[int, UMatrix]] = {}
    blocks: list[list[int]] = []
    for root in range(len(levels)):
        if any(root in b for b in blocks):
            continue
        paths = {root: ctx.identity()}
        frontier = [root]
        while frontier:
            fresh = []
            for k in frontier:
                for sigma in actors:
                    target = act(sigma, k)
                    if target not in paths:
                        paths[target] = sigma @ paths[k]
                        fresh.append(target)
            frontier = fresh
        blocks.append(sorted(paths))
        reach[root] = paths

    connecting: dict[tuple[int, int], UMatrix] = {}
    for block in blocks:
        paths = reach[block[0]]
        for a in block:
            for b in block:
                if a != b:
                    connecting[(a, b)] = paths[b] @ paths[a].inverse()

    certificate = CheckResult(name="orbit-witnesses")
    for (a, b), sigma in connecting.items():
        certificate.record(act(sigma, a) == b, lambda: {"from": a, "to": b, "element": sigma.to_list()})

    fixed = _extremes_fixed(ctx, lattice, actors, act)
    partition = OrbitPartition(
        lattice=lattice,
        blocks=blocks,
        witnesses=connecting,
        label="orbit" if full_group else "reachable-closure",
        certificate=certificate,
        notes={
            "actors": len(actors),
            "extremes_fixed": fixed,
            "forcing": (
                "Omega_min and Omega_max are fixed by every unitary element, so they form singleton orbits; "
                "every other block is a union of reachable parameters and hence contained in one orbit"
            ),
        },
    )
    logger.info(f"📊 {partition.label} blocks for |I|={len(lattice.ideal)}: sizes {partition.block_sizes}")
    return partition


def _extremes_fixed(ctx: FormsContext, lattice: ROFPLattice, actors: list[UMatrix], act) -> bool:
    top_points = frozenset(omega_max(ctx.delta, lattice.ideal))
    ends = {lattice.bottom}
    if lattice.parameters[lattice.top].elements == top_points:
        ends.add(lattice.top)
    return all(act(sigma, k) == k for sigma in actors for k in ends)
