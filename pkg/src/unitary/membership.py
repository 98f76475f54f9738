"""
Membership in the odd unitary group U_2n+1(R, Delta).

``is_unitary`` certifies through the inverse identities and the column
conditions q(sigma_*j) - (delta_0j, 0) in Delta. ``is_unitary_bruteforce``
quantifies the defining property over every vector of the module and is
only meant as an oracle on tiny instances.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

from formparam.heisenberg import HPoint
from unitary.forms import FormsContext
from unitary.matrix import UMatrix
from unitary.theta import eps
from utils.config import SETTINGS
from utils.errors import CapExceededError, NotInvertibleError, SizeMismatchError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(kw_only=True)
class UnitaryCertificate:
    """Violated identities of a membership test; empty lists mean unitary"""

    inverse_identities: list[dict[str, Any]] = field(default_factory=list)
    column_conditions: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.inverse_identities and not self.column_conditions

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "unitary": self.ok,
            "inverse_identities": self.inverse_identities,
            "column_conditions": self.column_conditions,
        }


def _check_dimension(ctx: FormsContext, sigma: UMatrix) -> None:
    if sigma.n != ctx.n or sigma.ring is not ctx.ring:
        raise SizeMismatchError(f"Matrix of size {sigma.theta.dim} does not act on M(R, Delta) of rank {ctx.dim}")


def column_defect(ctx: FormsContext, sigma: UMatrix, j: int) -> HPoint:
    """q(sigma_*j) - (delta_0j, 0)"""
    ring = ctx.ring
    target = HPoint(ring.one if j == 0 else ring.zero, ring.zero)
    return ctx.ops.minus(ctx.column_q(sigma, j), target)


def expected_inverse_entry(ctx: FormsContext, sigma: UMatrix, i: int, j: int) -> int:
    """
    Entry (i, j) of sigma^-1 forced by b-preservation, pre-multiplied by mu
    when i = 0:

        i, j != 0:  lam^(-(eps(i)+1)/2) bar(sigma_-j,-i) lam^((eps(j)+1)/2)
        i = 0:      bar(sigma_-j,0) lam^((eps(j)+1)/2)
        j = 0:      lam^(-(eps(i)+1)/2) bar(sigma_0,-i) mu
        i = j = 0:  bar(sigma_00) mu
    """
    ring, quad = ctx.ring, ctx.quad
    bar = quad.bar
    match (i == 0, j == 0):
        case (False, False):
            return ring.m(ctx.lam_half(-1, eps(i)), bar(sigma.get(-j, -i)), ctx.lam_half(1, eps(j)))
        case (True, False):
            return ring.m(bar(sigma.get(-j, 0)), ctx.lam_half(1, eps(j)))
        case (False, True):
            return ring.m(ctx.lam_half(-1, eps(i)), bar(sigma.get(0, -i)), quad.mu)
        case _:
            return ring.m(bar(sigma.get(0, 0)), quad.mu)


def certify_unitary(ctx: FormsContext, sigma: UMatrix) -> UnitaryCertificate:
    """
    Full membership certificate.

    Raises:
        NotInvertibleError: sigma has no two-sided inverse
    """
    _check_dimension(ctx, sigma)
    ring = ctx.ring
    inverse = sigma.inverse()
    certificate = UnitaryCertificate()

    for i in ctx.theta.order:
        for j in ctx.theta.order:
            actual = inverse.get(i, j)
            if i == 0:
                actual = ring.m(ctx.quad.mu, actual)
            expected = expected_inverse_entry(ctx, sigma, i, j)
            if actual != expected:
                certificate.inverse_identities.append(
                    {"i": i, "j": j, "expected": ring.render(expected), "actual": ring.render(actual), "mu_scaled": i == 0}
                )

    for j in ctx.theta.order:
        defect = column_defect(ctx, sigma, j)
        if defect not in ctx.delta:
            certificate.column_conditions.append({"j": j, "defect": [ring.render(defect.x), ring.render(defect.y)]})

    return certificate


def is_unitary(ctx: FormsContext, sigma: UMatrix) -> bool:
    return certify_unitary(ctx, sigma).ok


def is_unitary_bruteforce(ctx: FormsContext, sigma: UMatrix, cap: Optional[int] = None) -> tuple[bool, Optional[dict[str, Any]]]:
    """
    b(sigma u, sigma v) = b(u, v) and q(sigma u) = q(u) mod Delta for every u, v.

    Returns the verdict and the first witness of a violation.

    Raises:
        CapExceededError: the module has more than ``cap`` vectors
        NotInvertibleError: sigma is singular
    """
    _check_dimension(ctx, sigma)
    cap = cap if cap is not None else SETTINGS.enumeration_cap
    count = ctx.vector_count()
    if count > cap:
        raise CapExceededError(f"Module has {count} vectors, cap is {cap}", details={"vectors": count, "cap": cap})

    sigma.inverse()

    vectors = list(ctx.all_vectors())
    images = [sigma.apply(u) for u in vectors]
    ops = ctx.ops

    for u, su in zip(vectors, images):
        if ops.minus(ctx.form_q(su), ctx.form_q(u)) not in ctx.delta:
            return False, {"violation": "q", "u": u.tolist()}

    for u, su in zip(vectors, images):
        for v, sv in zip(vectors, images):
            if ctx.form_b(su, sv) != ctx.form_b(u, v):
                return False, {"violation": "b", "u": u.tolist(), "v": v.tolist()}

    return True, None


def try_is_unitary(ctx: FormsContext, sigma: UMatrix) -> bool:
    """is_unitary that answers False on singular matrices"""
    try:
        return is_unitary(ctx, sigma)

    except NotInvertibleError:
        return False
