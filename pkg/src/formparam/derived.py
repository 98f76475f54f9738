from dataclasses import dataclass
from typing import Iterable

import numpy as np

from formparam.closure import close_subgroup, close_subquasimodule
from formparam.heisenberg import HPoint, Orientation, heisenberg
from formparam.ideals import bar_set, ideal_generated
from formparam.parameters import (
    FormParameter,
    OddFormIdeal,
    form_parameter_violations,
    ideal_tilde,
    make_odd_form_ideal,
    omega_min,
)
from rings.quadruple import OddQuadruple, inverse_quadruple
from utils.errors import CertificationFailedError, PointNotInParameterError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(frozen=True, kw_only=True)
class DerivedSets:
    """Ideals and sets attached to a form parameter Delta and a level (I, Omega)"""

    j_delta: frozenset[int]
    i_tilde: frozenset[int]
    i_zero: frozenset[int]
    i_tilde_zero: frozenset[int]
    j_omega: frozenset[int]
    lambda_delta: frozenset[int]
    gamma_omega: frozenset[int]

    def to_dict(self) -> dict[str, list[int]]:
        return {name: sorted(int(x) for x in getattr(self, name)) for name in self.__dataclass_fields__}


def first_coordinates(points: Iterable[HPoint]) -> frozenset[int]:
    return frozenset(p.x for p in points)


def vertical_part(points: Iterable[HPoint], zero: int) -> frozenset[int]:
    """{y | (0, y) in points}"""
    return frozenset(p.y for p in points if p.x == zero)


def _annihilating(quad: OddQuadruple, left: Iterable[int], right: Iterable[int], target: frozenset[int], on_left: bool) -> frozenset[int]:
    ring = quad.ring
    left = np.asarray(sorted(set(left)))
    right = np.asarray(sorted(set(right)))
    allowed = np.asarray(sorted(target))
    ar = np.arange(ring.size)
    if on_left:
        # {x | x * right in target}
        products = ring.mul[ar[:, None], right[None, :]]
        return frozenset(int(x) for x in np.nonzero(np.isin(products, allowed).all(axis=1))[0])
    # {x | left * x in target}
    products = ring.mul[left[:, None], ar[None, :]]
    return frozenset(int(x) for x in np.nonzero(np.isin(products, allowed).all(axis=0))[0])


def derived_sets(level: OddFormIdeal) -> DerivedSets:
    """J(Delta), I~, I0, I~0, J(Omega), Lambda(Delta) and Gamma(Omega)"""
    delta = level.delta
    quad = delta.quad
    ring = quad.ring

    j_delta = first_coordinates(delta.elements)
    i_zero = _annihilating(quad, [], j_delta, level.ideal, on_left=True)
    bar_j_mu = [ring.m(quad.bar(j), quad.mu) for j in j_delta]

    return DerivedSets(
        j_delta=j_delta,
        i_tilde=ideal_tilde(delta, level.ideal),
        i_zero=i_zero,
        i_tilde_zero=_annihilating(quad, bar_j_mu, [], i_zero, on_left=False),
        j_omega=first_coordinates(level.omega.elements),
        lambda_delta=vertical_part(delta.elements, ring.zero),
        gamma_omega=vertical_part(level.omega.elements, ring.zero),
    )


# =========================
#     INVERSE PARAMETERS
# =========================
def invert_points(quad: OddQuadruple, points: Iterable[HPoint]) -> frozenset[HPoint]:
    """{(x, y) | (x, bar(y)) in points}"""
    bar_inverse = np.argsort(quad.bar.table)
    return frozenset(HPoint(p.x, int(bar_inverse[p.y])) for p in points)


def inverse_parameter(delta: FormParameter) -> FormParameter:
    """Delta^-1, certified as a form parameter of the inverse quadruple"""
    inverse_quad = inverse_quadruple(delta.quad)
    ops = heisenberg(delta.quad, Orientation.MINUS)
    points = invert_points(delta.quad, delta.elements)
    closed = close_subgroup(ops, sorted(points))

    problems = form_parameter_violations(inverse_quad, closed.elements, closed.generators)
    if closed.elements != points or problems:
        raise CertificationFailedError(f"Inverted parameter failed certification: {problems}")
    return FormParameter(quad=inverse_quad, closed=closed)


def oriented_points(level_points: Iterable[HPoint], quad: OddQuadruple, orientation: Orientation) -> frozenset[HPoint]:
    """Omega itself for PLUS, Omega^-1 for MINUS"""
    if orientation == Orientation.MINUS:
        return invert_points(quad, level_points)
    return frozenset(level_points)


# =========================
#      DEFINED IDEALS
# =========================
@dataclass(frozen=True, kw_only=True)
class DefinedIdeal:
    level: OddFormIdeal
    # Whether Omega_min + Z.R was already closed before taking the full closure
    span_was_closed: bool


def defined_ideal(delta: FormParameter, generators: Iterable[int]) -> OddFormIdeal:
    """(I(Y), Omega_min(I(Y))) with I(Y) generated by Y and bar(Y)"""
    quad = delta.quad
    gens = set(generators)
    ideal = ideal_generated(quad.ring, gens | bar_set(quad.bar, gens), "two")
    return make_odd_form_ideal(delta, ideal, omega_min(delta, ideal))


def defined_ideal_from_points(delta: FormParameter, points: Iterable[HPoint]) -> DefinedIdeal:
    """
    Odd form ideal defined by a subset Z of Delta.

    Raises:
        PointNotInParameterError: some point of Z lies outside Delta
        CertificationFailedError: the result is not an odd form ideal
    """
    quad = delta.quad
    ring = quad.ring
    ops = heisenberg(quad)
    points = sorted({HPoint(*p) for p in points})

    outside = [p for p in points if p not in delta]
    if outside:
        raise PointNotInParameterError(
            f"{len(outside)} point(s) are not in Delta",
            details={"points": [list(p) for p in outside]},
        )

    j_delta = first_coordinates(delta.elements)
    z_prime = {ring.m(quad.bar(j), quad.mu, p.x) for j in j_delta for p in points} | {p.y for p in points}
    ideal = ideal_generated(ring, z_prime | bar_set(quad.bar, z_prime), "two")

    lower = omega_min(delta, ideal)
    spread = {ops.scale(p, r) for p in points for r in ring.elements}
    omega = close_subquasimodule(ops, list(lower.generators) + sorted(spread))
    span = {ops.plus(a, b) for a in lower.elements for b in spread}

    level = make_odd_form_ideal(delta, ideal, omega)
    return DefinedIdeal(level=level, span_was_closed=span == set(omega.elements))
