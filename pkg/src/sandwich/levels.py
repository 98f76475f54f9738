"""
Subgroups H of U_2n+1(R, Delta), their levels and the sandwich

    EU((R, Delta), (I, Omega))  in  H  in  CU((R, Delta), (I, Omega))

A SubgroupHandle is either a generator list (membership by capped closure)
or a membership predicate together with generators of H. Every verdict is
three-valued: verified, refuted with a witness, or truncated by a cap.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from congruence.levels import NormalClosure, eu_level_generators, eu_level_normal_closure
from congruence.membership import Level, in_CU, make_level
from domain import CheckResult, Verdict
from formparam.heisenberg import HPoint
from formparam.parameters import OddFormIdeal, make_odd_form_ideal, serialize_points
from unitary.closure import generate_group
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory, additive_basis
from unitary.matrix import UMatrix
from unitary.words import Token, extra_token, matrix_token, short_token
from utils.config import SETTINGS
from utils.errors import CertificationFailedError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


# =========================
#        SUBGROUPS
# =========================
@dataclass(kw_only=True, eq=False)
class SubgroupHandle:
    """
    A subgroup H given by generators, optionally with a membership predicate.

    Without a predicate membership materializes the closure of the
    generators, bounded by ``cap``.
    """

    name: str
    ctx: FormsContext
    generators: list[UMatrix] = field(default_factory=list)
    predicate: Optional[Callable[[UMatrix], bool]] = None
    cap: int = field(default_factory=lambda: SETTINGS.closure_cap)
    complete: bool = True
    _elements: Optional[frozenset[UMatrix]] = field(default=None, repr=False)

    @classmethod
    def from_generators(cls, name: str, ctx: FormsContext, generators: Iterable[UMatrix], cap: Optional[int] = None) -> "SubgroupHandle":
        return cls(name=name, ctx=ctx, generators=list(generators), cap=cap if cap is not None else SETTINGS.closure_cap)

    @classmethod
    def from_predicate(
        cls,
        name: str,
        ctx: FormsContext,
        predicate: Callable[[UMatrix], bool],
        generators: Iterable[UMatrix],
    ) -> "SubgroupHandle":
        return cls(name=name, ctx=ctx, predicate=predicate, generators=list(generators))

    @classmethod
    def from_closure(cls, name: str, ctx: FormsContext, closure: NormalClosure) -> "SubgroupHandle":
        """The subgroup generated by the conjugates of a normal closure; incomplete if it was truncated"""
        handle = cls(name=name, ctx=ctx, generators=list(closure.conjugates), cap=closure.cap, complete=not closure.truncated)
        if closure.elements is not None:
            handle._elements = closure.elements
        return handle

    # =========================
    #        MEMBERSHIP
    # =========================
    @property
    def is_closed(self) -> bool:
        return self._elements is not None

    def closure(self) -> frozenset[UMatrix]:
        """
        Raises:
            ClosureOverflowError: more than ``cap`` elements
        """
        if self._elements is None:
            self._elements = generate_group(self.generators, cap=self.cap, identity=self.ctx.identity())
            logger.debug(f"📊 Closure of {self.name}: {len(self._elements)} elements")
        return self._elements

    def contains(self, g: UMatrix) -> bool:
        if self.predicate is not None:
            return bool(self.predicate(g))
        return g in self.closure()

    def __contains__(self, g: UMatrix) -> bool:
        return self.contains(g)

    def conjugated(self, sigma: UMatrix) -> "SubgroupHandle":
        """sigma H sigma^-1"""
        inverse = sigma.inverse()
        generators = [g.conj(sigma) for g in self.generators]
        if self.predicate is not None:
            return SubgroupHandle.from_predicate(f"^sigma {self.name}", self.ctx, lambda g: self.contains(g.conj(inverse)), generators)
        return SubgroupHandle.from_generators(f"^sigma {self.name}", self.ctx, generators, self.cap)

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "generators": len(self.generators),
            "predicate": self.predicate is not None,
            "order": len(self._elements) if self._elements is not None else None,
            "complete": self.complete,
        }


# =========================
#          LEVELS
# =========================
@dataclass(kw_only=True)
class LevelResult:
    """The level (I, Omega) of H with an element of H realizing each generator"""

    form_ideal: OddFormIdeal
    ideal_witnesses: dict[int, Token]
    omega_witnesses: dict[HPoint, Token]

    @property
    def ideal(self) -> frozenset[int]:
        return self.form_ideal.ideal

    @property
    def omega(self) -> frozenset[HPoint]:
        return self.form_ideal.omega.elements

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.form_ideal.to_dict(),
            "witnesses": {
                "ideal": [{"x": int(x), "element": token} for x, token in sorted(self.ideal_witnesses.items())],
                "omega": [{"point": list(p), "element": token} for p, token in sorted(self.omega_witnesses.items())],
            },
        }


def level_of(handle: SubgroupHandle, factory: Optional[ElementaryFactory] = None) -> LevelResult:
    """
    I = {x | T_ij(x) in H for some i, j}, Omega = {a in Delta | T_i(a) in H for some negative i}

    Raises:
        ClosureOverflowError: generator-form H above its cap
        CertificationFailedError: (I, Omega) is not an odd form ideal
    """
    factory = factory or ElementaryFactory(handle.ctx)
    ring, theta = factory.ring, factory.theta
    if theta.n < 2:
        logger.warning(f"⚠️ At n = {theta.n} no short roots exist, I is read as {{0}}")

    found_ideal: dict[int, Token] = {ring.zero: matrix_token(handle.ctx.identity())} if theta.n < 2 else {}
    for x in ring.elements:
        for i, j in theta.short_pairs():
            if handle.contains(factory.short(i, j, x)):
                found_ideal[x] = short_token(i, j, x)
                break

    found_omega: dict[HPoint, Token] = {}
    for a in sorted(handle.ctx.delta.elements):
        for i in theta.minus:
            if handle.contains(factory.extra(i, a)):
                found_omega[a] = extra_token(i, a)
                break

    try:
        form_ideal = make_odd_form_ideal(handle.ctx.delta, found_ideal, found_omega)

    except CertificationFailedError as e:
        logger.warning(f"❌ Level of {handle.name} failed certification: {e}")
        raise CertificationFailedError(
            f"Level of {handle.name} is not an odd form ideal",
            details={
                "ideal": sorted(int(x) for x in found_ideal),
                "omega": serialize_points(found_omega),
                "cause": e.to_dict(),
            },
        )

    basis = additive_basis(ring, form_ideal.ideal)
    result = LevelResult(
        form_ideal=form_ideal,
        ideal_witnesses={x: found_ideal[x] for x in basis},
        omega_witnesses={a: found_omega[a] for a in form_ideal.omega.generators},
    )
    logger.info(f"✅ Level of {handle.name}: |I|={len(result.ideal)}, |Omega|={len(result.omega)}")
    return result


# =========================
#       E-NORMALITY
# =========================
def _members(handle: SubgroupHandle) -> list[UMatrix]:
    """Generators when known, otherwise the closure"""
    return list(handle.generators) if handle.generators else sorted(handle.closure())


def is_E_normal(handle: SubgroupHandle, eu_gens: Optional[Iterable[UMatrix]] = None) -> CheckResult:
    """
    g h g^-1 in H for every EU generator g and every generator h of H. In a
    finite group this is equivalent to EU normalizing H.

    Raises:
        ClosureOverflowError: generator-form H above its cap
    """
    eu_gens = list(eu_gens) if eu_gens is not None else ElementaryFactory(handle.ctx).reduced_generators()
    members = _members(handle)

    check = CheckResult(name="E-normal")
    for g in eu_gens:
        for h in members:
            check.record(handle.contains(h.conj(g)), lambda: {"conjugator": g.to_list(), "element": h.to_list()})

    check.truncated = not handle.complete
    check.details.update({"subgroup": handle.name, "conjugators": len(eu_gens), "elements": len(members)})
    logger.debug(f"{'✅' if check.passed else '❌'} {handle.name} E-normal: {check.cases - check.failures}/{check.cases}")
    return check


# =========================
#         SANDWICH
# =========================
def _lower_containment(handle: SubgroupHandle, level: Level, normal: CheckResult, cap: Optional[int]) -> CheckResult:
    """EU(level) in H"""
    check = CheckResult(name="EU-level-in-H")
    if normal.verdict == Verdict.PASS:
        # H is normalized by EU, so the preelementary generators suffice
        for g in eu_level_generators(level):
            check.record(handle.contains(g), lambda: {"generator": g.to_list()})
        check.details["method"] = "generators-in-E-normal-H"
        return check

    closure = eu_level_normal_closure(level, cap=cap)
    for g in closure.conjugates:
        check.record(handle.contains(g), lambda: {"conjugate": g.to_list()})
    check.truncated = closure.truncated
    check.details.update({"method": "conjugate-closure", **closure.summary()})
    return check


def _upper_containment(handle: SubgroupHandle, level: Level, eu_gens: list[UMatrix]) -> CheckResult:
    """H in CU(level); CU is a group, so H's generators suffice"""
    check = CheckResult(name="H-in-CU")
    for h in _members(handle):
        certificate = in_CU(h, level, eu_gens)
        check.record(certificate.ok, lambda: {"element": h.to_list(), **certificate.to_dict()})
    check.truncated = not handle.complete
    check.details["method"] = "generators" if handle.generators else "closure"
    return check


def sandwich_check(
    handle: SubgroupHandle,
    level: Optional[Level] = None,
    eu_gens: Optional[Iterable[UMatrix]] = None,
    cap: Optional[int] = None,
) -> list[CheckResult]:
    """
    E-normality of H and both containments of the sandwich at ``level``
    (default: the level of H).

    Raises:
        ClosureOverflowError: generator-form H above its cap
        CertificationFailedError: the level of H could not be certified
    """
    if level is None:
        level = make_level(handle.ctx, level_of(handle).form_ideal)
    eu_gens = list(eu_gens) if eu_gens is not None else level.factory.reduced_generators()

    normal = is_E_normal(handle, eu_gens)
    lower = _lower_containment(handle, level, normal, cap)
    upper = _upper_containment(handle, level, eu_gens)
    for check in (lower, upper):
        check.details["level"] = level.describe()

    verdicts = {c.name: c.verdict.value for c in (normal, lower, upper)}
    logger.info(f"📊 Sandwich for {handle.name}: {verdicts}")
    return [normal, lower, upper]
