import hashlib
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from formparam.closure import (
    ClosedSet,
    close_subgroup,
    close_subquasimodule,
    enumerate_between,
    normality_violations,
    plane_generators,
    subquasimodule_violations,
)
from formparam.heisenberg import HeisenbergOps, HPoint, heisenberg
from formparam.ideals import bar_set, ideal_generated, is_ideal
from rings.quadruple import OddQuadruple
from utils.config import SETTINGS
from utils.errors import CertificationFailedError, EnumerationOverflowError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

# Largest R x R searched for form parameters
PLANE_LIMIT = 65536


def points_digest(points: Iterable[HPoint]) -> str:
    """Stable short digest of a point set, used as a key in reports"""
    payload = ";".join(f"{x},{y}" for x, y in sorted(points))
    return hashlib.sha1(payload.encode()).hexdigest()[:12]


def serialize_points(points: Iterable[HPoint]) -> list[list[int]]:
    return [[int(x), int(y)] for x, y in sorted(points)]


# =========================
#        FORM PARAMETERS
# =========================
@dataclass(frozen=True, kw_only=True, eq=False)
class FormParameter:
    """A certified odd form parameter: a normal subquasimodule between the bounds"""

    quad: OddQuadruple
    closed: ClosedSet

    @property
    def elements(self) -> frozenset[HPoint]:
        return self.closed.elements

    @property
    def generators(self) -> tuple[HPoint, ...]:
        return self.closed.generators

    def __contains__(self, point) -> bool:
        return point in self.closed.elements

    def __len__(self) -> int:
        return len(self.closed.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormParameter) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    @cached_property
    def digest(self) -> str:
        return points_digest(self.elements)

    def sorted(self) -> list[HPoint]:
        return self.closed.sorted()


def delta_min(quad: OddQuadruple) -> frozenset[HPoint]:
    """{(0, x - bar(x) lam)}"""
    ring = quad.ring
    second = ring.add[np.arange(ring.size), ring.neg[ring.mul[quad.bar.table, quad.lam]]]
    return frozenset(HPoint(ring.zero, int(y)) for y in np.unique(second))


def delta_max(quad: OddQuadruple) -> frozenset[HPoint]:
    """Kernel of the trace: bar(x) mu x + y + bar(y) lam = 0"""
    ring = quad.ring
    ar = np.arange(ring.size)
    xmx = ring.mul[ring.mul[quad.bar.table, quad.mu], ar]
    ylam = ring.add[ar, ring.mul[quad.bar.table, quad.lam]]
    trace = ring.add[xmx[:, None], ylam[None, :]]
    xs, ys = np.nonzero(trace == ring.zero)
    return frozenset(HPoint(int(x), int(y)) for x, y in zip(xs, ys))


def form_parameter_violations(quad: OddQuadruple, points: frozenset[HPoint], generators: Optional[Iterable[HPoint]] = None) -> list[str]:
    ops = heisenberg(quad)
    problems = subquasimodule_violations(ops, points, generators)
    if not delta_min(quad) <= points:
        problems.append("missing-delta-min")
    if not points <= delta_max(quad):
        problems.append("outside-delta-max")
    if normality_violations(ops, points, plane_generators(ops), generators):
        problems.append("not-normal")
    return problems


def make_form_parameter(quad: OddQuadruple, points: Iterable[HPoint] | str) -> FormParameter:
    """
    Certified form parameter from "min", "max" or an explicit point set.

    Raises:
        CertificationFailedError: the set is not an odd form parameter
    """
    ops = heisenberg(quad)
    match points:
        case "min":
            raw = delta_min(quad)
        case "max":
            raw = delta_max(quad)
        case _:
            raw = frozenset(HPoint(*p) for p in points)

    closed = close_subgroup(ops, sorted(raw))
    if closed.elements != raw:
        raise CertificationFailedError(
            "Point set is not a subgroup of the Heisenberg group",
            details={"size": len(raw), "closure_size": len(closed)},
        )

    problems = form_parameter_violations(quad, closed.elements, closed.generators)
    if problems:
        raise CertificationFailedError(f"Not an odd form parameter: {problems}", details={"violations": problems})

    return FormParameter(quad=quad, closed=closed)


def enumerate_form_parameters(quad: OddQuadruple, cap: Optional[int] = None) -> list[FormParameter]:
    """
    Every odd form parameter of ``quad`` in (size, points) order.

    Raises:
        EnumerationOverflowError: |R|^2 or the number of parameters above ``cap``
    """
    cap = SETTINGS.enumeration_cap if cap is None else cap
    ops = heisenberg(quad)
    if quad.ring.size**2 > PLANE_LIMIT:
        raise EnumerationOverflowError(
            f"R x R has {quad.ring.size ** 2} points, too many to enumerate with cap {cap}",
            details={"cap": cap},
        )

    lower = close_subquasimodule(ops, sorted(delta_min(quad)))
    found = enumerate_between(ops, lower, delta_max(quad), cap)

    results = []
    for closed in found:
        problems = form_parameter_violations(quad, closed.elements, closed.generators)
        if problems:
            raise CertificationFailedError(f"Enumerated set failed certification: {problems}")
        results.append(FormParameter(quad=quad, closed=closed))

    logger.info(f"📊 {len(results)} odd form parameters for {quad.ring.spec.label()}")
    return results


# =========================
#      ODD FORM IDEALS
# =========================
@dataclass(frozen=True, kw_only=True, eq=False)
class OddFormIdeal:
    """A level (I, Omega) relative to a form parameter Delta"""

    delta: FormParameter
    ideal: frozenset[int]
    omega: ClosedSet

    def __eq__(self, other) -> bool:
        return isinstance(other, OddFormIdeal) and (self.ideal, self.omega.elements) == (other.ideal, other.omega.elements)

    def __hash__(self) -> int:
        return hash((self.ideal, self.omega.elements))

    @property
    def quad(self) -> OddQuadruple:
        return self.delta.quad

    def to_dict(self) -> dict:
        return {"ideal": sorted(int(x) for x in self.ideal), "omega": serialize_points(self.omega.elements)}


def ideal_tilde(delta: FormParameter, ideal: frozenset[int]) -> frozenset[int]:
    """{x | bar(J(Delta)) mu x is contained in I}"""
    quad = delta.quad
    ring = quad.ring
    left = np.asarray(sorted({ring.m(quad.bar(p.x), quad.mu) for p in delta.elements}))
    products = ring.mul[left[:, None], np.arange(ring.size)[None, :]]
    inside = np.isin(products, np.asarray(sorted(ideal))).all(axis=0)
    return frozenset(int(x) for x in np.nonzero(inside)[0])


def omega_min(delta: FormParameter, ideal: frozenset[int]) -> ClosedSet:
    """Sum closure of {(0, x - bar(x) lam) | x in I} and Delta . I"""
    quad = delta.quad
    ring = quad.ring
    ops = heisenberg(quad)
    gens = {HPoint(ring.zero, ring.s(x, ring.m(quad.bar(x), quad.lam))) for x in ideal}
    gens |= {ops.scale(g, r) for g in delta.generators for r in ideal}
    return close_subgroup(ops, sorted(gens))


def omega_max(delta: FormParameter, ideal: frozenset[int]) -> frozenset[HPoint]:
    """Delta intersected with (I~ x I)"""
    tilde = ideal_tilde(delta, ideal)
    return frozenset(p for p in delta.elements if p.x in tilde and p.y in ideal)


def odd_form_ideal_violations(delta: FormParameter, ideal: frozenset[int], omega: ClosedSet) -> list[str]:
    quad = delta.quad
    ring = quad.ring
    ops = heisenberg(quad)
    problems: list[str] = []

    if not is_ideal(ring, ideal, "two"):
        problems.append("not-two-sided-ideal")
    if bar_set(quad.bar, ideal) != ideal:
        problems.append("not-involution-invariant")
    problems += subquasimodule_violations(ops, omega.elements, omega.generators)
    if not omega_min(delta, ideal).elements <= omega.elements:
        problems.append("missing-omega-min")
    if not omega.elements <= omega_max(delta, ideal):
        problems.append("outside-omega-max")
    if normality_violations(ops, omega.elements, delta.generators, omega.generators):
        problems.append("not-normal-in-delta")
    return problems


def make_odd_form_ideal(delta: FormParameter, ideal: Iterable[int], omega: Iterable[HPoint] | ClosedSet) -> OddFormIdeal:
    """
    Certified odd form ideal.

    Raises:
        CertificationFailedError: (I, Omega) breaks one of the laws
    """
    ops = heisenberg(delta.quad)
    ideal = frozenset(int(x) for x in ideal)
    if not isinstance(omega, ClosedSet):
        raw = frozenset(HPoint(*p) for p in omega)
        omega = close_subgroup(ops, sorted(raw))
        if omega.elements != raw:
            raise CertificationFailedError("Omega is not a subgroup", details={"size": len(raw)})

    problems = odd_form_ideal_violations(delta, ideal, omega)
    if problems:
        raise CertificationFailedError(f"Not an odd form ideal: {problems}", details={"violations": problems})
    return OddFormIdeal(delta=delta, ideal=ideal, omega=omega)


def enumerate_relative_form_parameters(delta: FormParameter, ideal: Iterable[int], cap: Optional[int] = None) -> list[ClosedSet]:
    """
    Every relative form parameter for I, ordered by (size, points).

    Raises:
        EnumerationOverflowError: more than ``cap`` results
    """
    cap = SETTINGS.enumeration_cap if cap is None else cap
    ideal = frozenset(ideal)
    ops = heisenberg(delta.quad)
    lower = close_subquasimodule(ops, omega_min(delta, ideal).generators)
    results = enumerate_between(ops, lower, omega_max(delta, ideal), cap)

    for closed in results:
        problems = odd_form_ideal_violations(delta, ideal, closed)
        if problems:
            raise CertificationFailedError(f"Enumerated relative parameter failed certification: {problems}")

    return results


def full_level(delta: FormParameter) -> OddFormIdeal:
    """(R, Delta)"""
    return OddFormIdeal(delta=delta, ideal=frozenset(delta.quad.ring.elements), omega=delta.closed)


def trivial_level(delta: FormParameter) -> OddFormIdeal:
    """({0}, Omega_min)"""
    zero = frozenset({delta.quad.ring.zero})
    return OddFormIdeal(delta=delta, ideal=zero, omega=omega_min(delta, zero))
