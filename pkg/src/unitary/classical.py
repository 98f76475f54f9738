"""
Classical groups realized as odd unitary groups.

    GL-odd       R = S x S^op, swap, lam = mu = 1, Delta = Delta_max        ~ GL_2n+1(S)
    O-odd        R commutative, identity, lam = 1, mu = 2, {(x, -x^2)}      = O_2n+1(R)
    Sp-odd       R commutative, identity, lam = -1, mu = 0, R x R           = Sp_2n+1(R)
    even-as-odd  R commutative, identity, Delta = {0} x Lambda              ~ U_2n(R, Lambda)
"""

import itertools
from typing import Literal, Optional

import numpy as np

from domain import CheckResult
from formparam.heisenberg import HPoint
from formparam.parameters import make_form_parameter
from rings import linalg
from rings.finite_ring import FiniteRing, build_ring
from rings.involution import standard_involution
from rings.quadruple import make_odd_quadruple
from rings.spec import RingSpec, product_opposite
from unitary.forms import FormsContext
from unitary.matrix import UMatrix
from unitary.membership import is_unitary, is_unitary_bruteforce
from utils.config import SETTINGS
from utils.errors import CapExceededError, IncompatibleBaseError, NotInvertibleError, SpecInvalidError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

ClassicalKind = Literal["GL-odd", "O-odd", "Sp-odd", "even-as-odd"]


def _commutative_base(base: RingSpec | dict, kind: str, cap: Optional[int]) -> FiniteRing:
    spec = RingSpec.parse(base)
    ring = build_ring(spec, cap)
    if not ring.is_commutative:
        raise IncompatibleBaseError(f"{kind} needs a commutative base ring, got {spec.label()}")
    return ring


def lambda_points(ring: FiniteRing, lam: int, which: Literal["min", "max"]) -> frozenset[int]:
    """Lambda_min = {x - x lam} or Lambda_max = {x | x = -x lam} for the identity involution"""
    ar = np.arange(ring.size)
    x_lam = ring.mul[ar, lam]
    if which == "min":
        return frozenset(int(v) for v in np.unique(ring.add[ar, ring.neg[x_lam]]))
    return frozenset(int(x) for x in ar[ar == ring.neg[x_lam]])


def classical_instance(
    kind: ClassicalKind,
    base: RingSpec | dict,
    n: int = 1,
    *,
    lam: Literal["one", "minus_one"] = "one",
    lambda_form: Literal["min", "max"] = "max",
    cap: Optional[int] = None,
) -> FormsContext:
    """
    Forms context of one classical family over ``base``.

    ``lam`` and ``lambda_form`` only apply to even-as-odd.

    Raises:
        IncompatibleBaseError: O-odd, Sp-odd or even-as-odd over a noncommutative base,
            or GL-odd over a base that is not integers mod m or a prime field
    """
    match kind:
        case "GL-odd":
            spec = RingSpec.parse(base)
            if spec.kind not in ("integers_mod", "prime_field"):
                raise IncompatibleBaseError(f"GL-odd builds S x S^op over a base ring, got {spec.label()}")
            ring = build_ring(product_opposite(spec), cap)
            quad = make_odd_quadruple(ring, standard_involution(ring, "swap"), ring.one, ring.one)
            delta = make_form_parameter(quad, "max")

        case "O-odd":
            ring = _commutative_base(base, kind, cap)
            two = ring.a(ring.one, ring.one)
            quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.one, two)
            delta = make_form_parameter(quad, [HPoint(x, ring.n(ring.m(x, x))) for x in ring.elements])

        case "Sp-odd":
            ring = _commutative_base(base, kind, cap)
            quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), ring.minus_one, ring.zero)
            delta = make_form_parameter(quad, [HPoint(x, y) for x in ring.elements for y in ring.elements])

        case "even-as-odd":
            ring = _commutative_base(base, kind, cap)
            symmetry = ring.one if lam == "one" else ring.minus_one
            quad = make_odd_quadruple(ring, standard_involution(ring, "identity"), symmetry, ring.zero)
            points = lambda_points(ring, symmetry, lambda_form)
            delta = make_form_parameter(quad, [HPoint(ring.zero, y) for y in points])

        case _:
            raise SpecInvalidError(f"Unknown classical kind '{kind}'")

    logger.debug(f"🔧 {kind} over {ring.spec.label()}: |Delta| = {len(delta)}")
    return FormsContext(n=n, delta=delta)


def preserves_gram(ctx: FormsContext, sigma: UMatrix, gram: Optional[np.ndarray] = None) -> bool:
    """sigma^* G sigma = G, with G the Gram matrix of b unless given"""
    ring, bar = ctx.ring, ctx.quad.bar
    g = ctx.gram if gram is None else np.asarray(gram)
    adjoint = bar.table[sigma.entries.T]
    left = linalg.matmul(ring, linalg.matmul(ring, adjoint, g), sigma.entries)
    return bool((left == g).all())


def verify_unitary_oracles(
    ctx: FormsContext,
    compare_gram: bool = False,
    cap: Optional[int] = None,
) -> list[CheckResult]:
    """
    Run both membership tests on every invertible matrix of the module's size
    and count disagreements. With ``compare_gram`` also require membership to
    coincide with preserving the Gram matrix of b (the symplectic-like case).

    Raises:
        CapExceededError: there are more than ``cap`` matrices to try
    """
    ring, dim = ctx.ring, ctx.dim
    cap = cap if cap is not None else SETTINGS.closure_cap
    count = ring.size ** (dim * dim)
    if count > cap:
        raise CapExceededError(f"{count} matrices of size {dim}, cap is {cap}", details={"matrices": count, "cap": cap})

    agreement = CheckResult(name="unitary-oracle-agreement")
    gram = CheckResult(name="unitary-iff-preserves-gram")
    members = 0
    for values in itertools.product(ring.elements, repeat=dim * dim):
        sigma = UMatrix(ring, np.array(values).reshape(dim, dim))
        try:
            sigma.inverse()
        except NotInvertibleError:
            continue

        fast = is_unitary(ctx, sigma)
        slow, witness = is_unitary_bruteforce(ctx, sigma)
        members += fast
        agreement.record(fast == slow, lambda: {"matrix": sigma.to_list(), "certified": fast, "witness": witness})
        if compare_gram:
            gram.record(fast == preserves_gram(ctx, sigma), lambda: {"matrix": sigma.to_list(), "certified": fast})

    agreement.details["group_order"] = members
    logger.info(f"📊 Membership oracles over {agreement.cases} invertible matrices: {members} unitary, {agreement.failures} disagreements")
    return [agreement, gram] if compare_gram else [agreement]
