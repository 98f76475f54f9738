"""
Machine checks of the elementary relations and of conjugation by P_ij.

Each relation is checked on every admissible index pattern. Ring values and
parameter points run over all combinations when a pattern has at most
``PATTERN_LIMIT`` of them and over seeded samples otherwise.
"""

from typing import Callable, Optional

import numpy as np

from domain import CheckResult
from formparam.checks import product_of
from formparam.heisenberg import HPoint
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.theta import eps
from utils.config import SETTINGS
from utils.errors import BadIndicesError, OddformError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

PATTERN_LIMIT = 256

RELATION_IDS = ("S1", "S2", "S3", "S4", "S5", "E1", "E2", "E3", "SE1", "SE2")
CONJUGATION_IDS = ("P-short-left", "P-short-right", "P-extra")


class _Sweep:
    """Runs one relation over its index patterns and value pools"""

    def __init__(self, factory: ElementaryFactory, samples: int, seed: int):
        self.factory = factory
        self.ring = factory.ring
        self.quad = factory.quad
        self.samples = samples
        self.rng = np.random.default_rng(seed)

    def run(self, name: str, patterns: list[tuple], pools: Callable[[tuple], list[list]], check: Callable[..., bool]) -> CheckResult:
        result = CheckResult(name=name)
        result.details["patterns"] = len(patterns)
        per_pattern = max(4, self.samples // max(len(patterns), 1))

        for pattern in patterns:
            for values in product_of(pools(pattern), per_pattern, self.rng, result, limit=PATTERN_LIMIT):
                try:
                    ok = check(*pattern, *values)
                except OddformError as e:
                    ok = False
                    logger.debug(f"{name} raised {e.code} on {pattern} {values}")
                result.record(ok, lambda: {"indices": list(pattern), "values": [_plain(v) for v in values]})

        logger.debug(f"{'✅' if result.passed else '❌'} {name}: {result.cases} cases, {result.failures} failures")
        return result


def _plain(value):
    return list(value) if isinstance(value, HPoint) else value


def verify_relations(factory: ElementaryFactory, samples: Optional[int] = None, seed: Optional[int] = None) -> list[CheckResult]:
    """
    Check S1 to SE2 for the elementary matrices of ``factory``.

    Raises:
        BadIndicesError: n < 3, where some index patterns cannot occur
    """
    theta = factory.theta
    if theta.n < 3:
        raise BadIndicesError(f"The relation suite needs n >= 3, got n = {theta.n}")

    samples = samples if samples is not None else SETTINGS.samples
    seed = seed if seed is not None else SETTINGS.seed
    sweep = _Sweep(factory, samples, seed)
    f, r, q = factory, factory.ring, factory.quad
    elements = list(r.elements)
    hb = theta.hb
    pairs = theta.short_pairs()

    def points(i: int) -> list[HPoint]:
        return sorted(f.parameter_for(i))

    def partner(i: int, j: int, x: int) -> int:
        """lam^((eps(j)-1)/2) bar(x) lam^((1-eps(i))/2)"""
        return r.m(q.lam_pow((eps(j) - 1) // 2), q.bar(x), q.lam_pow((1 - eps(i)) // 2))

    def lam_minus_half(i: int) -> int:
        """lam^(-(1+eps(i))/2)"""
        return q.lam_pow(-(1 + eps(i)) // 2)

    results: list[CheckResult] = []

    results.append(sweep.run(
        "S1", pairs, lambda p: [elements],
        lambda i, j, x: f.short(i, j, x) == f.short(-j, -i, r.n(partner(i, j, x))),
    ))

    results.append(sweep.run(
        "S2", pairs, lambda p: [elements, elements],
        lambda i, j, x, y: f.short(i, j, x) @ f.short(i, j, y) == f.short(i, j, r.a(x, y)),
    ))

    s3 = [(i, j, k, l) for i, j in pairs for k, l in pairs if k not in (j, -i) and l not in (i, -j)]
    results.append(sweep.run(
        "S3", s3, lambda p: [elements, elements],
        lambda i, j, k, l, x, y: f.short(i, j, x).commutator(f.short(k, l, y)).is_identity(),
    ))

    s4 = [(i, j, k) for i, j in pairs for k in hb if k not in (j, -j, i, -i)]
    results.append(sweep.run(
        "S4", s4, lambda p: [elements, elements],
        lambda i, j, k, x, y: f.short(i, j, x).commutator(f.short(j, k, y)) == f.short(i, k, r.m(x, y)),
    ))

    def s5(i, j, x, y):
        twisted = r.m(q.lam_pow((-1 - eps(i)) // 2), q.bar(y), q.bar(x), q.lam_pow((1 - eps(i)) // 2))
        return f.short(i, j, x).commutator(f.short(j, -i, y)) == f.long(i, r.s(r.m(x, y), twisted))

    results.append(sweep.run("S5", pairs, lambda p: [elements, elements], s5))

    singles = [(i,) for i in hb]
    results.append(sweep.run(
        "E1", singles, lambda p: [points(p[0]), points(p[0])],
        lambda i, a, b: f.extra(i, a) @ f.extra(i, b) == f.extra(i, f.ops_for(i).plus(a, b)),
    ))

    def e2(i, j, a, b):
        value = r.n(r.m(lam_minus_half(i), q.bar(a.x), q.mu, b.x))
        return f.extra(i, a).commutator(f.extra(j, b)) == f.short(i, -j, value)

    results.append(sweep.run("E2", pairs, lambda p: [points(p[0]), points(p[1])], e2))

    def e3(i, a, b):
        inner = r.s(r.m(q.bar(a.x), q.mu, b.x), r.m(q.bar(b.x), q.mu, a.x))
        return f.extra(i, a).commutator(f.extra(i, b)) == f.long(i, r.n(r.m(lam_minus_half(i), inner)))

    results.append(sweep.run("E3", singles, lambda p: [points(p[0]), points(p[0])], e3))

    se1 = [(i, j, k) for i, j in pairs for k in hb if k not in (j, -i)]
    results.append(sweep.run(
        "SE1", se1, lambda p: [elements, points(p[2])],
        lambda i, j, k, x, a: f.short(i, j, x).commutator(f.extra(k, a)).is_identity(),
    ))

    def se2(i, j, x, a):
        c = partner(i, j, x)
        expected = f.short(j, -i, r.m(a.y, c)) @ f.extra(i, HPoint(r.m(a.x, c), r.m(x, a.y, c)))
        return f.short(i, j, x).commutator(f.extra(j, a)) == expected

    results.append(sweep.run("SE2", pairs, lambda p: [elements, points(p[1])], se2))

    failed = [c.name for c in results if not c.passed]
    logger.info(f"{'✅' if not failed else '❌'} Elementary relations at n={theta.n}: {len(results) - len(failed)}/{len(results)} hold")
    return results


def verify_conjugations(factory: ElementaryFactory, samples: Optional[int] = None, seed: Optional[int] = None) -> list[CheckResult]:
    """
    P_ki T_ij(x) P_ik = T_kj(x), P_kj T_ij(x) P_jk = T_ik(x) and
    P_-k,-i T_i(y, z) P_-i,-k = T_k(y, lam^((eps(i)-eps(k))/2) z) for k != +-i, +-j.
    """
    theta = factory.theta
    if theta.n < 3:
        raise BadIndicesError(f"Conjugation checks need n >= 3, got n = {theta.n}")

    samples = samples if samples is not None else SETTINGS.samples
    seed = seed if seed is not None else SETTINGS.seed
    sweep = _Sweep(factory, samples, seed)
    f, r, q = factory, factory.ring, factory.quad
    elements = list(r.elements)

    triples = [(i, j, k) for i, j in theta.short_pairs() for k in theta.hb if k not in (i, -i, j, -j)]
    extra_pairs = [(i, k) for i, k in theta.short_pairs()]

    def conj(h: UMatrix, g: UMatrix) -> UMatrix:
        return g.conj(h)

    def lam_shift(i: int, k: int) -> int:
        return q.lam_pow((eps(i) - eps(k)) // 2)

    results = [
        sweep.run(
            "P-short-left", triples, lambda p: [elements],
            lambda i, j, k, x: conj(f.permutation(k, i), f.short(i, j, x)) == f.short(k, j, x),
        ),
        sweep.run(
            "P-short-right", triples, lambda p: [elements],
            lambda i, j, k, x: conj(f.permutation(k, j), f.short(i, j, x)) == f.short(i, k, x),
        ),
        sweep.run(
            "P-extra", extra_pairs, lambda p: [sorted(f.parameter_for(p[0]))],
            lambda i, k, a: conj(f.permutation(-k, -i), f.extra(i, a)) == f.extra(k, HPoint(a.x, r.m(lam_shift(i, k), a.y))),
        ),
    ]

    failed = [c.name for c in results if not c.passed]
    logger.info(f"{'✅' if not failed else '❌'} Conjugation by P at n={theta.n}: {len(results) - len(failed)}/{len(results)} hold")
    return results
