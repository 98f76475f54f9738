"""
The M2(F2) scenario: R = M2(F2) with transpose, lam = e, mu = 0,
Delta = Delta_max and I = {0}.

    - Delta_max = {(x, y) | y = y^t} and the relative parameters for {0} are
      J x {0} for the five right ideals J of M2(F2)
    - the swap sigma = diag(e, [[0, 1], [1, 0]], e) moves Omega_2 to Omega_3
      and so lies outside U~ of level (0, Omega_2)
    - the orbits are {Omega_1}, {Omega_2, Omega_3, Omega_4}, {Omega_5}
    - H = {identity rows except row 0 = (x, [[1, a], [0, 1]], y)} is E-normal
      of level (0, Omega_max) but not normal in U: ^sigma tau leaves H
"""

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from action.conjugation import conj_form_parameter
from action.orbits import orbits
from congruence.membership import in_tilde, make_level
from domain import CheckResult
from formparam.heisenberg import HPoint
from formparam.parameters import make_form_parameter, make_odd_form_ideal, omega_max, serialize_points
from rings.finite_ring import FiniteRing, build_ring
from rings.involution import standard_involution
from rings.quadruple import make_odd_quadruple
from rings.spec import matrix_ring, prime_field
from sandwich.levels import SubgroupHandle, is_E_normal, level_of, sandwich_check
from unitary.forms import FormsContext
from unitary.generators import additive_basis
from unitary.matrix import UMatrix
from unitary.membership import is_unitary
from utils.errors import BadIndicesError, ScenarioAssertionError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

SWAP = [[0, 1], [1, 0]]
SHEAR = [[1, 0], [1, 1]]
TAU = [[1, 1], [0, 1]]

RIGHT_IDEALS = {
    "J1": lambda a, b: [[0, 0], [0, 0]],
    "J2": lambda a, b: [[a, b], [0, 0]],
    "J3": lambda a, b: [[0, 0], [a, b]],
    "J4": lambda a, b: [[a, b], [a, b]],
}


# =========================
#        INSTANCE
# =========================
def m2f2_context(n: int = 3) -> FormsContext:
    ring = build_ring(matrix_ring(2, prime_field(2)))
    quad = make_odd_quadruple(ring, standard_involution(ring, "transpose"), ring.one, ring.zero)
    return FormsContext(n=n, delta=make_form_parameter(quad, "max"))


def right_ideal(ring: FiniteRing, name: str) -> frozenset[int]:
    if name == "J5":
        return frozenset(ring.elements)
    shape = RIGHT_IDEALS[name]
    return frozenset(ring.parse_element(shape(a, b)) for a in (0, 1) for b in (0, 1))


def block_diagonal(ctx: FormsContext, middle: int) -> UMatrix:
    """diag(e, middle, e)"""
    entries = ctx.identity().entries.copy()
    zero = ctx.theta.pos(0)
    entries[zero, zero] = middle
    return UMatrix(ctx.ring, entries)


# =========================
#      THE SUBGROUP H
# =========================
def m2f2_block_subgroup(ctx: FormsContext) -> SubgroupHandle:
    """
    H: identity rows except row 0, whose middle entry is [[1, a], [0, 1]]
    and whose hyperbolic entries are arbitrary.
    """
    ring = ctx.ring
    zero = ctx.theta.pos(0)
    identity = ctx.identity().entries
    others = np.ones(ctx.dim, dtype=bool)
    others[zero] = False
    middles = {ring.one, ring.parse_element(TAU)}

    def contains(g: UMatrix) -> bool:
        return bool((g.entries[others] == identity[others]).all()) and int(g.entries[zero, zero]) in middles

    generators = [block_diagonal(ctx, ring.parse_element(TAU))]
    for j in ctx.theta.hb:
        for r in additive_basis(ring):
            generators.append(UMatrix.from_units(ring, ctx.n, {(0, j): r}))

    return SubgroupHandle.from_predicate("m2f2_block_H", ctx, contains, generators)


# =========================
#         SCENARIO
# =========================
@dataclass(kw_only=True)
class ScenarioResult:
    checks: list[CheckResult] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def expect(self, name: str, ok: bool, **diff) -> bool:
        check = CheckResult(name=name)
        check.record(ok, diff or None)
        self.checks.append(check)
        logger.debug(f"{'✅' if ok else '❌'} {name}")
        return ok

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def raise_on_failure(self) -> None:
        """
        Raises:
            ScenarioAssertionError: some expectation failed; details carry the diffs
        """
        if self.failed:
            diffs = {c.name: c.witnesses for c in self.checks if not c.passed}
            raise ScenarioAssertionError(f"Scenario diverged at {self.failed}", details={"failed": self.failed, "diff": diffs})


def run_m2f2_scenario(n: int = 3, strict: bool = True) -> ScenarioResult:
    """
    Run every expectation of the scenario at rank n.

    Raises:
        BadIndicesError: n < 3
        ScenarioAssertionError: an expectation failed and ``strict`` is set
    """
    if n < 3:
        raise BadIndicesError(f"The scenario needs n >= 3, got {n}")

    logger.info(f"🚀 Running the M2(F2) scenario at n = {n}")
    ctx = m2f2_context(n)
    ring, delta = ctx.ring, ctx.delta
    zero = frozenset({ring.zero})
    result = ScenarioResult()

    # Delta_max and the lattice
    symmetric = {y for y in ring.elements if ctx.quad.bar(y) == y}
    expected_delta = {HPoint(x, y) for x in ring.elements for y in symmetric}
    result.expect("delta-max-shape", delta.elements == expected_delta, size=len(delta), expected=len(expected_delta))

    omegas = {name: frozenset(HPoint(x, ring.zero) for x in right_ideal(ring, name)) for name in ("J1", "J2", "J3", "J4", "J5")}
    partition = orbits(ctx, zero, witnesses=[block_diagonal(ctx, ring.parse_element(SWAP)), block_diagonal(ctx, ring.parse_element(SHEAR))])
    lattice = [p.elements for p in partition.lattice.parameters]
    result.expect("lattice-size", len(lattice) == 5, size=len(lattice))
    result.expect("lattice-is-right-ideals", set(lattice) == set(omegas.values()), sizes=[len(p) for p in lattice])
    result.data["lattice"] = partition.lattice.to_dict()

    # The swap moves Omega_2 to Omega_3
    sigma = block_diagonal(ctx, ring.parse_element(SWAP))
    result.expect("sigma-unitary", is_unitary(ctx, sigma))
    level_2 = make_level(ctx, make_odd_form_ideal(delta, zero, omegas["J2"]))
    moved = conj_form_parameter(sigma, level_2).omega.elements
    result.expect("sigma-moves-omega-2-to-omega-3", moved == omegas["J3"], image=serialize_points(moved))
    result.expect("sigma-not-in-tilde", not in_tilde(sigma, level_2).ok)

    # Orbits
    index = {name: partition.lattice.index_of(points) for name, points in omegas.items()}
    blocks = sorted(sorted(b) for b in partition.blocks)
    expected_blocks = sorted(sorted(index[k] for k in group) for group in (("J1",), ("J2", "J3", "J4"), ("J5",)))
    result.expect("orbit-partition", blocks == expected_blocks, blocks=blocks, expected=expected_blocks)
    result.expect("orbit-witnesses", partition.certificate.passed)
    result.expect("orbit-extremes-fixed", partition.notes["extremes_fixed"])
    result.data["orbits"] = partition.to_dict()

    # H and its level
    handle = m2f2_block_subgroup(ctx)
    result.expect("H-generators-unitary", all(is_unitary(ctx, g) and handle.contains(g) for g in handle.generators))
    found = level_of(handle)
    top = frozenset(omega_max(delta, zero))
    result.expect("H-level", found.ideal == zero and found.omega == top, level=found.to_dict())
    result.expect("omega-max-is-R-times-zero", top == omegas["J5"])
    result.data["level"] = found.to_dict()

    top_level = make_level(ctx, found.form_ideal)
    normal, lower, upper = sandwich_check(handle, top_level)
    result.checks += [normal, lower, upper]

    # Not normal in U: ^sigma tau leaves H
    tau = block_diagonal(ctx, ring.parse_element(TAU))
    conjugate = tau.conj(sigma)
    result.expect("tau-in-H", handle.contains(tau))
    result.expect("sigma-tau-is-shear", int(conjugate.get(0, 0)) == ring.parse_element(SHEAR), middle=ring.render(conjugate.get(0, 0)))
    result.expect("sigma-tau-not-in-H", not handle.contains(conjugate))

    # ^sigma H is E-normal of level (0, ^sigma Omega_max) = (0, Omega_max)
    conjugated = handle.conjugated(sigma)
    result.checks.append(is_E_normal(conjugated))
    moved_top = conj_form_parameter(sigma, top_level).omega.elements
    conjugated_level = level_of(conjugated)
    result.expect("conjugated-H-level", conjugated_level.ideal == zero and conjugated_level.omega == moved_top == top)

    if result.failed:
        logger.error(f"❌ Scenario failed: {result.failed}")
        if strict:
            result.raise_on_failure()
    else:
        logger.info(f"✅ Scenario reproduced: {len(result.checks)} expectations hold")
    return result
