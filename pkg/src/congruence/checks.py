"""
Machine checks for the congruence subgroups of one level.

``group`` arguments are explicit lists of unitary matrices: the whole group
at n = 1, random products of generators otherwise.
"""

from typing import Optional, Sequence

import numpy as np

from congruence.levels import eu_level_generators
from congruence.membership import (
    Level,
    congruence_to_identity,
    in_principal,
    in_principal_bruteforce,
    in_principal_max_coordinates,
    in_tilde,
    in_tilde_bruteforce,
    zero_column_defect,
)
from domain import CheckResult
from formparam.checks import product_of
from formparam.heisenberg import HPoint
from formparam.parameters import make_odd_form_ideal, omega_max
from unitary.matrix import UMatrix
from unitary.membership import is_unitary
from utils.config import SETTINGS
from utils.errors import CapExceededError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

# Pair counts up to this size are checked exhaustively
PAIR_LIMIT = 40000


def _random_vector(level: Level, rng: np.random.Generator, in_m_i: bool) -> np.ndarray:
    ctx = level.ctx
    ideal = np.asarray(sorted(level.ideal))
    u = rng.integers(ctx.ring.size, size=ctx.dim)
    if in_m_i:
        for p in ctx.theta.hb_positions:
            u[p] = ideal[int(rng.integers(len(ideal)))]
    return u


def _vector_pool(level: Level, which: Optional[str], rng: np.random.Generator, samples: int, result: CheckResult) -> list[np.ndarray]:
    """Every vector of the submodule when few enough, else ``samples`` random ones"""
    ctx = level.ctx
    coordinates = level.modules.coordinates(which) if which else None
    if ctx.vector_count(coordinates) <= samples:
        return list(ctx.all_vectors(coordinates))
    result.exhaustive = False
    return [_random_vector(level, rng, which == "M(I)") for _ in range(samples)]


def verify_quadratic_defect(level: Level, samples: Optional[int] = None, seed: Optional[int] = None) -> list[CheckResult]:
    """
    For u or v in M(I):

        q(u + v) - (q(u) + q(v) + (0, b(u, v))) = (0, s - bar(s) lam),  s = sum_{i>0} bar(v_i) u_-i

    and the difference lies in Omega_min of I.
    """
    samples = samples if samples is not None else SETTINGS.samples
    rng = np.random.default_rng(seed if seed is not None else SETTINGS.seed)
    ctx, ring, ops = level.ctx, level.ctx.ring, level.ops
    bar, lam = ctx.quad.bar, ctx.quad.lam
    lower = level.omega_min

    formula = CheckResult(name="quadratic-defect-formula")
    inside = CheckResult(name="quadratic-defect-in-omega-min")
    size = int(np.sqrt(max(samples, 1)))
    in_ideal = _vector_pool(level, "M(I)", rng, size, formula)
    anywhere = _vector_pool(level, None, rng, size, formula)
    inside.exhaustive = formula.exhaustive

    for first, second in ((in_ideal, anywhere), (anywhere, in_ideal)):
        for u, v in product_of([first, second], samples, rng, formula, limit=PAIR_LIMIT):
            expected = ops.plus(ops.plus(ctx.form_q(u), ctx.form_q(v)), HPoint(ring.zero, ctx.form_b(u, v)))
            defect = ops.minus(ctx.form_q(ctx.add_vectors(u, v)), expected)
            s = ring.total(ring.m(bar(ctx.coordinate(v, i)), ctx.coordinate(u, -i)) for i in ctx.theta.plus)
            witness = lambda: {"u": u.tolist(), "v": v.tolist(), "defect": list(defect)}
            formula.record(defect == HPoint(ring.zero, ring.s(s, ring.m(bar(s), lam))), witness)
            inside.record(defect in lower, witness)

    return [formula, inside]


def verify_column_congruence(
    level: Level,
    group: Sequence[UMatrix],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> list[CheckResult]:
    """q(sigma u) - q(u) = (q(sigma_*0) - (1, 0)).u_0 mod Omega_min of I, for u in M(I)"""
    samples = samples if samples is not None else SETTINGS.samples
    rng = np.random.default_rng(seed if seed is not None else SETTINGS.seed)
    ctx, ops = level.ctx, level.ops
    lower = level.omega_min

    check = CheckResult(name="column-congruence")
    vectors = _vector_pool(level, "M(I)", rng, max(samples // max(len(group), 1), 16), check)
    defects = {sigma: zero_column_defect(level, sigma) for sigma in group}

    for sigma, u in product_of([list(group), vectors], samples, rng, check, limit=PAIR_LIMIT):
        lhs = ops.minus(ctx.form_q(sigma.apply(u)), ctx.form_q(u))
        rhs = ops.scale(defects[sigma], ctx.coordinate(u, 0))
        check.record(ops.minus(lhs, rhs) in lower, lambda: {"sigma": sigma.to_list(), "u": u.tolist()})

    check.details["group_size"] = len(group)
    return [check]


def verify_tilde_normalizes(
    level: Level,
    group: Sequence[UMatrix],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> list[CheckResult]:
    """
    tau sigma tau^-1 in U(level) for tau in U~(level) and sigma in U(level).
    Also records whether U~(level) covered every tested element.
    """
    samples = samples if samples is not None else SETTINGS.samples
    rng = np.random.default_rng(seed if seed is not None else SETTINGS.seed)
    tilde = [g for g in group if in_tilde(g, level).ok]
    principal = [g for g in group if in_principal(g, level).ok]

    check = CheckResult(name="tilde-normalizes-principal")
    for tau, sigma in product_of([tilde, principal], samples, rng, check, limit=PAIR_LIMIT):
        check.record(in_principal(sigma.conj(tau), level).ok, lambda: {"tau": tau.to_list(), "sigma": sigma.to_list()})

    check.details.update({
        "group_size": len(group),
        "tilde_size": len(tilde),
        "principal_size": len(principal),
        "tilde_covers_group": len(tilde) == len(group),
    })
    logger.debug(f"📊 U~ has {len(tilde)}/{len(group)} tested elements, U has {len(principal)}")
    return [check]


def verify_membership_oracles(level: Level, group: Sequence[UMatrix], cap: Optional[int] = None) -> list[CheckResult]:
    """Coordinate tests for U and U~ agree with the quantified definitions"""
    principal = CheckResult(name="principal-oracle")
    tilde = CheckResult(name="tilde-oracle")

    try:
        for sigma in group:
            fast, (slow, witness) = in_principal(sigma, level).ok, in_principal_bruteforce(sigma, level, cap)
            principal.record(fast == slow, lambda: {"sigma": sigma.to_list(), "coordinate": fast, "oracle": witness})
            fast, (slow, witness) = in_tilde(sigma, level).ok, in_tilde_bruteforce(sigma, level, cap)
            tilde.record(fast == slow, lambda: {"sigma": sigma.to_list(), "coordinate": fast, "oracle": witness})

    except CapExceededError as e:
        logger.warning(f"⚠️ Membership oracles skipped: {e}")
        for check in (principal, tilde):
            check.truncated = True
            check.details["skipped"] = e.to_dict()

    return [principal, tilde]


def verify_tilde_criteria(level: Level, group: Sequence[UMatrix]) -> list[CheckResult]:
    """
    The four criteria for U~ agree, and U(level) in U~(level) in U hold on
    every tested element.
    """
    criteria = CheckResult(name="tilde-criteria-agree")
    chain = CheckResult(name="congruence-chain")

    for sigma in group:
        certificate = in_tilde(sigma, level, cross_check=True)
        criteria.record(certificate.notes["conditions_agree"], lambda: {"sigma": sigma.to_list(), **certificate.notes})
        principal = in_principal(sigma, level).ok
        ok = (not principal or certificate.ok) and (not certificate.ok or is_unitary(level.ctx, sigma))
        chain.record(ok, lambda: {"sigma": sigma.to_list(), "principal": principal, "tilde": certificate.ok})

    return [criteria, chain]


def verify_max_level_coordinates(level: Level, group: Sequence[UMatrix]) -> list[CheckResult]:
    """
    At the level (I, Omega_max) membership is the coordinate condition on the
    hyperbolic block and row 0, and members are congruent to e mod (I, I~, I0, I~0).
    """
    delta = level.ctx.delta
    top = level.with_form_ideal(make_odd_form_ideal(delta, level.ideal, omega_max(delta, level.ideal)))

    coordinates = CheckResult(name="max-level-coordinates")
    congruent = CheckResult(name="max-level-congruent-to-e")
    for sigma in group:
        member = in_principal(sigma, top).ok
        coordinates.record(member == in_principal_max_coordinates(sigma, top).ok, lambda: {"sigma": sigma.to_list(), "member": member})
        if member:
            congruent.record(congruence_to_identity(sigma, top).ok, lambda: {"sigma": sigma.to_list()})

    return [coordinates, congruent]


def verify_generator_memberships(level: Level) -> list[CheckResult]:
    """Level generators lie in U(level); every EU generator lies in U~(level)"""
    preelementary = CheckResult(name="level-generators-in-principal")
    for g in eu_level_generators(level):
        preelementary.record(in_principal(g, level).ok, lambda: {"generator": g.to_list()})

    elementary = CheckResult(name="elementary-in-tilde")
    for g in level.factory.all_generators():
        elementary.record(in_tilde(g, level).ok, lambda: {"generator": g.to_list()})

    return [preelementary, elementary]


def verify_congruence_suite(
    level: Level,
    group: Sequence[UMatrix],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    cap: Optional[int] = None,
) -> list[CheckResult]:
    results = (
        verify_quadratic_defect(level, samples, seed)
        + verify_column_congruence(level, group, samples, seed)
        + verify_tilde_normalizes(level, group, samples, seed)
        + verify_membership_oracles(level, group, cap)
        + verify_tilde_criteria(level, group)
        + verify_max_level_coordinates(level, group)
        + verify_generator_memberships(level)
    )
    failed = [c.name for c in results if not c.passed]
    logger.info(f"{'✅' if not failed else '❌'} Congruence checks at |I|={len(level.ideal)}, |Omega|={len(level.omega)}: {len(results) - len(failed)}/{len(results)} passed")
    return results
