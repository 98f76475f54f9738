"""
Machine checks of the Heisenberg quasimodule identities.

Every check quantifies over all tuples of points up to a tuple limit and over
seeded random tuples otherwise; the CheckResult records which.
"""

import itertools
from typing import Iterator, Optional, Sequence

import numpy as np

from domain import CheckResult
from formparam.derived import inverse_parameter, invert_points
from formparam.heisenberg import HPoint, heisenberg
from formparam.parameters import FormParameter, delta_max, delta_min
from rings.quadruple import OddQuadruple, inverse_quadruple
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

# Tuple counts up to this size are checked exhaustively
EXHAUSTIVE_LIMIT = 70000


def all_points(quad: OddQuadruple) -> list[HPoint]:
    return [HPoint(x, y) for x in quad.ring.elements for y in quad.ring.elements]


def product_of(
    pools: Sequence[Sequence],
    samples: int,
    rng: np.random.Generator,
    result: CheckResult,
    limit: int = EXHAUSTIVE_LIMIT,
) -> Iterator[tuple]:
    """The full product of ``pools`` when it has at most ``limit`` tuples, else ``samples`` random tuples"""
    if int(np.prod([len(p) for p in pools], dtype=np.float64)) <= limit:
        yield from itertools.product(*pools)
        return

    result.exhaustive = False
    for _ in range(samples):
        yield tuple(pool[int(rng.integers(len(pool)))] for pool in pools)


def tuples(pool: Sequence, arity: int, samples: int, rng: np.random.Generator, result: CheckResult) -> Iterator[tuple]:
    return product_of([pool] * arity, samples, rng, result)


def verify_quasimodule_identities(
    quad: OddQuadruple,
    delta: Optional[FormParameter] = None,
    samples: int = 2000,
    seed: int = 37,
) -> list[CheckResult]:
    """
    Group law, negation, difference, commutator and n-fold sum formulas,
    the quasimodule axioms, the trace homomorphism and the form parameter
    remarks (commutativity modulo Delta_min, negation on Delta_max, Delta^-1).
    """
    ops = heisenberg(quad)
    ring = quad.ring
    bar, mu, lam = quad.bar, quad.mu, quad.lam
    rng = np.random.default_rng(seed)
    points = all_points(quad)
    scalars = list(ring.elements)
    d_min = delta_min(quad)
    d_max = delta_max(quad)
    results: list[CheckResult] = []

    # --- group law ---
    check = CheckResult(name="heisenberg-associative")
    for a, b, c in tuples(points, 3, samples, rng, check):
        check.record(ops.plus(ops.plus(a, b), c) == ops.plus(a, ops.plus(b, c)), lambda: {"a": a, "b": b, "c": c})
    results.append(check)

    check = CheckResult(name="negation-formula")
    for (a,) in tuples(points, 1, samples, rng, check):
        expected = HPoint(ring.n(a.x), ring.s(ring.n(a.y), ring.m(bar(a.x), mu, a.x)))
        ok = ops.neg(a) == expected and ops.plus(a, expected) == ops.zero and ops.plus(expected, a) == ops.zero
        check.record(ok, lambda: {"a": a})
    results.append(check)

    check = CheckResult(name="difference-formula")
    for a, b in tuples(points, 2, samples, rng, check):
        dx = ring.s(a.x, b.x)
        expected = HPoint(dx, ring.a(ring.s(a.y, b.y), ring.m(bar(dx), mu, b.x)))
        check.record(ops.minus(a, b) == expected, lambda: {"a": a, "b": b})
    results.append(check)

    check = CheckResult(name="commutator-formula")
    for a, b in tuples(points, 2, samples, rng, check):
        expected = HPoint(ring.zero, ring.s(ring.m(bar(b.x), mu, a.x), ring.m(bar(a.x), mu, b.x)))
        check.record(ops.commutator(a, b) == expected, lambda: {"a": a, "b": b})
    results.append(check)

    check = CheckResult(name="n-fold-sum-formula")
    for size in range(2, 5):
        for chosen in tuples(points, size, samples, rng, check):
            cross = ring.total(
                ring.m(bar(chosen[i].x), mu, chosen[j].x) for i in range(size) for j in range(i + 1, size)
            )
            expected = HPoint(ring.total(p.x for p in chosen), ring.s(ring.total(p.y for p in chosen), cross))
            check.record(ops.total(chosen) == expected, lambda: {"points": list(chosen)})
    results.append(check)

    # --- quasimodule axioms ---
    check = CheckResult(name="quasimodule-axioms")
    for (a,) in tuples(points, 1, samples, rng, check):
        check.record(ops.scale(a, ring.zero) == ops.zero and ops.scale(a, ring.one) == a, lambda: {"a": a})
    for a, x, y in product_of([points, scalars, scalars], samples, rng, check):
        check.record(ops.scale(ops.scale(a, x), y) == ops.scale(a, ring.m(x, y)), lambda: {"a": a, "x": x, "y": y})
    for a, b, r in product_of([points, points, scalars], samples, rng, check):
        check.record(ops.scale(ops.plus(a, b), r) == ops.plus(ops.scale(a, r), ops.scale(b, r)), lambda: {"a": a, "b": b, "r": r})
    results.append(check)

    # --- trace ---
    check = CheckResult(name="trace-homomorphism")
    for a, b in tuples(points, 2, samples, rng, check):
        check.record(ops.trace(ops.plus(a, b)) == ring.a(ops.trace(a), ops.trace(b)), lambda: {"a": a, "b": b})
    for (a,) in tuples(points, 1, samples, rng, check):
        for r in scalars:
            check.record(ops.trace(ops.scale(a, r)) == ring.m(bar(r), ops.trace(a), r), lambda: {"a": a, "r": r})
    results.append(check)

    # --- form parameter remarks ---
    check = CheckResult(name="commutative-modulo-delta-min")
    for a, b in tuples(points, 2, samples, rng, check):
        check.record(ops.minus(ops.plus(a, b), ops.plus(b, a)) in d_min, lambda: {"a": a, "b": b})
    results.append(check)

    check = CheckResult(name="negation-on-delta-max")
    for a in sorted(d_max):
        check.record(ops.neg(a) == HPoint(ring.n(a.x), ring.m(bar(a.y), lam)), lambda: {"a": a})
    check.record(d_min <= d_max, {"reason": "delta_min not contained in delta_max"})
    results.append(check)

    if delta is not None:
        check = CheckResult(name="inverse-parameter")
        inverse = inverse_parameter(delta)
        expected = inverse_quadruple(delta.quad)
        same_quadruple = (inverse.quad.lam, inverse.quad.mu) == (expected.lam, expected.mu) and np.array_equal(inverse.quad.bar.table, expected.bar.table)
        check.record(same_quadruple, {"reason": "Delta^-1 is not over the inverse quadruple"})
        twice = invert_points(inverse.quad, inverse.elements)
        check.record(twice == delta.elements, {"reason": "inverting twice changed Delta"})
        results.append(check)

    failed = [r.name for r in results if not r.passed]
    logger.info(f"{'✅' if not failed else '❌'} Quasimodule identities on {ring.spec.label()}: {len(results) - len(failed)}/{len(results)} passed")
    return results
