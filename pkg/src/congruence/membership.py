"""
Membership in the congruence subgroups of level (I, Omega).

    U(level)   principal congruence subgroup
    U~(level)  sigma and sigma^-1 preserve q modulo Omega on M(I, Omega)
    CU(level)  sigma in U~(level) with [sigma, EU] inside U(level)

The coordinate tests are the operative ones. The ``*_bruteforce`` variants
quantify the defining property over every vector of the relevant submodule
and serve as oracles on tiny instances.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Optional

import numpy as np

from formparam.closure import ClosedSet, close_subgroup
from formparam.derived import DerivedSets, derived_sets
from formparam.heisenberg import HeisenbergOps, HPoint
from formparam.parameters import OddFormIdeal, omega_min
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from utils.config import SETTINGS
from utils.errors import CapExceededError, SizeMismatchError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


# =========================
#          LEVELS
# =========================
@dataclass(frozen=True, kw_only=True)
class CongruenceSets:
    """Coordinate predicates for M(I), M(I, Omega) and M(R, Delta)"""

    theta_hb: tuple[int, ...]
    ideal: frozenset[int]
    j_delta: frozenset[int]
    j_omega: frozenset[int]
    positions: tuple[int, ...]
    zero_position: int

    def in_m_i(self, u: np.ndarray) -> bool:
        return all(int(u[p]) in self.ideal for p in self.positions)

    def in_m_i_omega(self, u: np.ndarray) -> bool:
        return self.in_m_i(u) and int(u[self.zero_position]) in self.j_omega

    def in_m_r_delta(self, u: np.ndarray) -> bool:
        return int(u[self.zero_position]) in self.j_delta

    def coordinates(self, which: str) -> dict[int, frozenset[int]]:
        """Coordinate restrictions for FormsContext.all_vectors"""
        match which:
            case "M(I)":
                return {i: self.ideal for i in self.theta_hb}
            case "M(I,Omega)":
                return {**{i: self.ideal for i in self.theta_hb}, 0: self.j_omega}
            case "M(R,Delta)":
                return {0: self.j_delta}
            case _:
                raise ValueError(f"Unknown submodule '{which}'")


@dataclass(frozen=True, kw_only=True, eq=False)
class Level:
    """An odd form ideal (I, Omega) together with the module it acts on"""

    ctx: FormsContext
    form_ideal: OddFormIdeal

    def __post_init__(self):
        if self.form_ideal.delta != self.ctx.delta:
            raise SizeMismatchError("Level and forms context use different form parameters")

    @property
    def ideal(self) -> frozenset[int]:
        return self.form_ideal.ideal

    @property
    def omega(self) -> ClosedSet:
        return self.form_ideal.omega

    @property
    def ops(self) -> HeisenbergOps:
        return self.ctx.ops

    @cached_property
    def derived(self) -> DerivedSets:
        return derived_sets(self.form_ideal)

    @cached_property
    def omega_min(self) -> ClosedSet:
        return omega_min(self.ctx.delta, self.ideal)

    @cached_property
    def factory(self) -> ElementaryFactory:
        return ElementaryFactory(self.ctx)

    @cached_property
    def modules(self) -> CongruenceSets:
        theta = self.ctx.theta
        return CongruenceSets(
            theta_hb=theta.hb,
            ideal=self.ideal,
            j_delta=self.derived.j_delta,
            j_omega=self.derived.j_omega,
            positions=theta.hb_positions,
            zero_position=theta.pos(0),
        )

    def with_form_ideal(self, form_ideal: OddFormIdeal) -> "Level":
        return Level(ctx=self.ctx, form_ideal=form_ideal)

    def describe(self) -> dict[str, Any]:
        return {**self.form_ideal.to_dict(), "n": self.ctx.n}


def make_level(ctx: FormsContext, form_ideal: OddFormIdeal) -> Level:
    return Level(ctx=ctx, form_ideal=form_ideal)


# =========================
#       CERTIFICATES
# =========================
@dataclass(kw_only=True)
class MembershipCertificate:
    """Violated conditions of one membership test; empty means member"""

    subgroup: str
    violations: list[dict[str, Any]] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, condition: str, **payload) -> None:
        self.violations.append({"condition": condition, **payload})

    def to_dict(self) -> dict[str, Any]:
        return {"subgroup": self.subgroup, "member": self.ok, "violations": self.violations, "notes": self.notes}


def _check_dimension(level: Level, sigma: UMatrix) -> None:
    if sigma.n != level.ctx.n or sigma.ring is not level.ctx.ring:
        raise SizeMismatchError(f"Matrix of size {sigma.theta.dim} does not match rank {level.ctx.n}")


def _hb_violations(level: Level, sigma: UMatrix, certificate: MembershipCertificate) -> None:
    """sigma_hb = e_hb mod I"""
    ring = level.ctx.ring
    for i in level.ctx.theta.hb:
        for j in level.ctx.theta.hb:
            target = ring.one if i == j else ring.zero
            if ring.s(sigma.get(i, j), target) not in level.ideal:
                certificate.add("hb-mod-I", i=i, j=j, entry=ring.render(sigma.get(i, j)))


def zero_column_defect(level: Level, sigma: UMatrix) -> HPoint:
    """q(sigma_*0) - (1, 0)"""
    ring = level.ctx.ring
    return level.ops.minus(level.ctx.column_q(sigma, 0), HPoint(ring.one, ring.zero))


def _plain(point: HPoint) -> list[int]:
    return [int(point.x), int(point.y)]


# =========================
#  PRINCIPAL CONGRUENCE
# =========================
def in_principal(sigma: UMatrix, level: Level) -> MembershipCertificate:
    """
    sigma in U((R, Delta), (I, Omega)), for sigma already known to be unitary:

        sigma_hb = e_hb mod I,
        q(sigma_*j) in Omega for hyperbolic j,
        (q(sigma_*0) - (1, 0)).x in Omega for x in J(Delta).
    """
    _check_dimension(level, sigma)
    certificate = MembershipCertificate(subgroup="U")
    _hb_violations(level, sigma, certificate)

    omega = level.omega
    for j in level.ctx.theta.hb:
        value = level.ctx.column_q(sigma, j)
        if value not in omega:
            certificate.add("column-q-in-omega", j=j, q=_plain(value))

    defect = zero_column_defect(level, sigma)
    for x in sorted(level.derived.j_delta):
        if level.ops.scale(defect, x) not in omega:
            certificate.add("zero-column-defect", x=x, defect=_plain(defect))
            break

    return certificate


def is_principal(sigma: UMatrix, level: Level) -> bool:
    return in_principal(sigma, level).ok


def _vectors(level: Level, which: str, cap: Optional[int]) -> Iterable[np.ndarray]:
    cap = cap if cap is not None else SETTINGS.enumeration_cap
    coordinates = level.modules.coordinates(which)
    count = level.ctx.vector_count(coordinates)
    if count > cap:
        raise CapExceededError(f"{which} has {count} vectors, cap is {cap}", details={"vectors": count, "cap": cap})
    return level.ctx.all_vectors(coordinates)


def in_principal_bruteforce(sigma: UMatrix, level: Level, cap: Optional[int] = None) -> tuple[bool, Optional[dict[str, Any]]]:
    """
    sigma_hb = e_hb mod I and q(sigma u) = q(u) mod Omega for every u in M(R, Delta).

    Raises:
        CapExceededError: M(R, Delta) has more than ``cap`` vectors
    """
    _check_dimension(level, sigma)
    certificate = MembershipCertificate(subgroup="U")
    _hb_violations(level, sigma, certificate)
    if not certificate.ok:
        return False, certificate.violations[0]

    ctx, ops = level.ctx, level.ops
    for u in _vectors(level, "M(R,Delta)", cap):
        if ops.minus(ctx.form_q(sigma.apply(u)), ctx.form_q(u)) not in level.omega:
            return False, {"condition": "q-mod-omega", "u": u.tolist()}
    return True, None


def in_principal_max_coordinates(sigma: UMatrix, level: Level) -> MembershipCertificate:
    """
    Membership in U((R, Delta), (I, Omega_max)) for the ideal of ``level``:
    sigma_hb = e_hb mod I and sigma_0* = e_0^t mod (I~, I~0).
    """
    _check_dimension(level, sigma)
    ring = level.ctx.ring
    derived = level.derived
    certificate = MembershipCertificate(subgroup="U-max")
    _hb_violations(level, sigma, certificate)

    for j in level.ctx.theta.hb:
        if sigma.get(0, j) not in derived.i_tilde:
            certificate.add("row-zero-mod-I-tilde", j=j, entry=ring.render(sigma.get(0, j)))
    if ring.s(sigma.get(0, 0), ring.one) not in derived.i_tilde_zero:
        certificate.add("corner-mod-I-tilde-zero", entry=ring.render(sigma.get(0, 0)))
    return certificate


def congruence_to_identity(sigma: UMatrix, level: Level) -> MembershipCertificate:
    """
    sigma = e mod (I, I~, I0, I~0): hyperbolic entries mod I, row 0 off the
    corner mod I~, column 0 off the corner mod I0 and the corner mod I~0.
    """
    _check_dimension(level, sigma)
    ring = level.ctx.ring
    derived = level.derived
    certificate = MembershipCertificate(subgroup="congruent-to-e")
    _hb_violations(level, sigma, certificate)

    for k in level.ctx.theta.hb:
        if sigma.get(0, k) not in derived.i_tilde:
            certificate.add("row-zero-mod-I-tilde", j=k, entry=ring.render(sigma.get(0, k)))
        if sigma.get(k, 0) not in derived.i_zero:
            certificate.add("column-zero-mod-I-zero", i=k, entry=ring.render(sigma.get(k, 0)))
    if ring.s(sigma.get(0, 0), ring.one) not in derived.i_tilde_zero:
        certificate.add("corner-mod-I-tilde-zero", entry=ring.render(sigma.get(0, 0)))
    return certificate


# =========================
#       CONJUGATED OMEGA
# =========================
def conjugated_omega(sigma: UMatrix, level: Level) -> ClosedSet:
    """
    The sum closure of (q(sigma_*0) - (1, 0)).x + (x, y) over (x, y) in Omega,
    together with Omega_min of I. Certification lives in action.conjugation.
    """
    ops = level.ops
    defect = zero_column_defect(level, sigma)
    moved = {ops.plus(ops.scale(defect, p.x), p) for p in level.omega.elements}
    return close_subgroup(ops, sorted(moved), base=level.omega_min)


# =========================
#         U TILDE
# =========================
@dataclass(kw_only=True)
class TildeConditions:
    """The four equivalent criteria for sigma in U~(level)"""

    scaled_columns: bool
    defect_multiples: bool
    shifted_points: bool
    fixes_omega: bool

    @property
    def agree(self) -> bool:
        return len({self.scaled_columns, self.defect_multiples, self.shifted_points, self.fixes_omega}) == 1

    def to_dict(self) -> dict[str, bool]:
        return {
            "scaled_columns": self.scaled_columns,
            "defect_multiples": self.defect_multiples,
            "shifted_points": self.shifted_points,
            "fixes_omega": self.fixes_omega,
        }


def _defect_multiples(level: Level, sigma: UMatrix) -> Optional[dict[str, Any]]:
    """(q(sigma_*0) - (1, 0)).x in Omega for every x in J(Omega)"""
    defect = zero_column_defect(level, sigma)
    for x in sorted(level.derived.j_omega):
        if level.ops.scale(defect, x) not in level.omega:
            return {"x": x, "defect": _plain(defect)}
    return None


def _scaled_columns(level: Level, sigma: UMatrix) -> bool:
    """q(sigma_*0 x) = (x, 0) mod Omega for every x in J(Omega)"""
    ctx, ring, ops = level.ctx, level.ctx.ring, level.ops
    column = sigma.col(0)
    return all(
        ops.minus(ctx.form_q(ctx.scale_vector(column, x)), HPoint(x, ring.zero)) in level.omega
        for x in level.derived.j_omega
    )


def _shifted_points(level: Level, sigma: UMatrix) -> bool:
    """(sigma_00 x, y + q_2(sigma_*0 x)) in Omega for every (x, y) in Omega"""
    ctx, ring = level.ctx, level.ctx.ring
    column = sigma.col(0)
    corner = sigma.get(0, 0)
    for p in level.omega.elements:
        shifted = HPoint(ring.m(corner, p.x), ring.a(p.y, ctx.form_q(ctx.scale_vector(column, p.x)).y))
        if shifted not in level.omega:
            return False
    return True


def tilde_conditions(sigma: UMatrix, level: Level) -> TildeConditions:
    """Evaluate all four criteria for sigma and sigma^-1"""
    _check_dimension(level, sigma)
    inverse = sigma.inverse()
    pair = (sigma, inverse)
    return TildeConditions(
        scaled_columns=all(_scaled_columns(level, s) for s in pair),
        defect_multiples=all(_defect_multiples(level, s) is None for s in pair),
        shifted_points=all(_shifted_points(level, s) for s in pair),
        fixes_omega=conjugated_omega(sigma, level).elements == level.omega.elements,
    )


def in_tilde(sigma: UMatrix, level: Level, cross_check: bool = False) -> MembershipCertificate:
    """
    sigma in U~(level), decided by (q(sigma_*0) - (1, 0)).x in Omega for x
    in J(Omega), for sigma and for sigma^-1. With ``cross_check`` the other
    three criteria are evaluated too and recorded under ``notes``.
    """
    _check_dimension(level, sigma)
    certificate = MembershipCertificate(subgroup="U~")
    for label, s in (("sigma", sigma), ("inverse", sigma.inverse())):
        witness = _defect_multiples(level, s)
        if witness is not None:
            certificate.add("zero-column-defect", matrix=label, **witness)

    if cross_check:
        conditions = tilde_conditions(sigma, level)
        certificate.notes["conditions"] = conditions.to_dict()
        certificate.notes["conditions_agree"] = conditions.agree and conditions.defect_multiples == certificate.ok
        if not certificate.notes["conditions_agree"]:
            logger.warning(f"⚠️ Tilde criteria disagree: {conditions.to_dict()}")
    return certificate


def is_tilde(sigma: UMatrix, level: Level) -> bool:
    return in_tilde(sigma, level).ok


def in_tilde_bruteforce(sigma: UMatrix, level: Level, cap: Optional[int] = None) -> tuple[bool, Optional[dict[str, Any]]]:
    """
    q(sigma u) = q(sigma^-1 u) = q(u) mod Omega for every u in M(I, Omega).

    Raises:
        CapExceededError: M(I, Omega) has more than ``cap`` vectors
    """
    _check_dimension(level, sigma)
    ctx, ops = level.ctx, level.ops
    inverse = sigma.inverse()
    for u in _vectors(level, "M(I,Omega)", cap):
        qu = ctx.form_q(u)
        for label, s in (("sigma", sigma), ("inverse", inverse)):
            if ops.minus(ctx.form_q(s.apply(u)), qu) not in level.omega:
                return False, {"condition": "q-mod-omega", "matrix": label, "u": u.tolist()}
    return True, None


# =========================
#      FULL CONGRUENCE
# =========================
def in_CU(sigma: UMatrix, level: Level, eu_gens: Optional[Iterable[UMatrix]] = None) -> MembershipCertificate:
    """
    sigma in CU(level): sigma in U~(level) and [sigma, g] in U(level) for
    every g in ``eu_gens`` (default: the reduced generators of EU). Since
    U(level) is normalized by EU, [sigma, gh] = [sigma, g] g[sigma, h]g^-1
    reduces the test to a generating set.
    """
    certificate = in_tilde(sigma, level)
    certificate.subgroup = "CU"
    if not certificate.ok:
        return certificate

    gens = list(eu_gens) if eu_gens is not None else level.factory.reduced_generators()
    for index, g in enumerate(gens):
        commutator = sigma.commutator(g)
        inner = in_principal(commutator, level)
        if not inner.ok:
            certificate.add(
                "commutator-in-U",
                generator=index,
                commutator=commutator.to_list(),
                reason=inner.violations[0],
            )
            break

    certificate.notes["generators"] = len(gens)
    return certificate


def is_CU(sigma: UMatrix, level: Level, eu_gens: Optional[Iterable[UMatrix]] = None) -> bool:
    return in_CU(sigma, level, eu_gens).ok
