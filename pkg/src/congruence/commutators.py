"""
q-values of the columns of commutators [sigma, T_ij(x)] and [sigma, T_i(y, z)].

Each column identity writes q(tau_*k) as a sum of scaled columns of sigma
plus a residual (0, w - bar(w) lam). The check computes the residual as
-(displayed sum) + q(tau_*k) and tests that w can be taken from the ideal
J(sigma) (or J(sigma) + J'(sigma) in column 0 of the extra-short case).
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from domain import CheckResult
from formparam.heisenberg import HPoint
from formparam.ideals import additive_closure, ideal_generated
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.theta import eps
from utils.config import SETTINGS
from utils.errors import BadIndicesError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(frozen=True)
class ShortMove:
    i: int
    j: int
    x: int


@dataclass(frozen=True)
class ExtraMove:
    i: int
    point: HPoint


Move = Union[ShortMove, ExtraMove]


class ColumnIdentities:
    """The commutator column identities for one sigma"""

    def __init__(self, factory: ElementaryFactory, sigma: UMatrix):
        self.factory = factory
        self.ctx: FormsContext = factory.ctx
        self.ring = factory.ring
        self.quad = factory.quad
        self.ops = self.ctx.ops
        self.sigma = sigma
        self.inverse = sigma.inverse()

    # =========================
    #     RESIDUAL IDEALS
    # =========================
    @cached_property
    def j_sigma(self) -> frozenset[int]:
        """Ideal of off-diagonal hyperbolic entries of sigma, sigma' and bar(a) mu sigma_0l, bar(a) mu sigma'_0l"""
        r, q, hb = self.ring, self.quad, self.ctx.theta.hb
        j_delta = {p.x for p in self.ctx.delta.elements}
        gens = set()
        for s in (self.sigma, self.inverse):
            gens |= {s.get(k, l) for k in hb for l in hb if k != l}
            gens |= {r.m(q.bar(a), q.mu, s.get(0, l)) for a in j_delta for l in hb}
        return ideal_generated(r, gens, "two")

    @cached_property
    def j_prime_sigma(self) -> frozenset[int]:
        """Left ideal of sigma_k0 and sigma'_k0"""
        hb = self.ctx.theta.hb
        return ideal_generated(self.ring, {s.get(k, 0) for s in (self.sigma, self.inverse) for k in hb}, "left")

    @cached_property
    def j_sum(self) -> frozenset[int]:
        return additive_closure(self.ring, self.j_prime_sigma, base=self.j_sigma)

    def residual_set(self, ideal: frozenset[int]) -> frozenset[HPoint]:
        r, q = self.ring, self.quad
        return frozenset(HPoint(r.zero, r.s(w, r.m(q.bar(w), q.lam))) for w in ideal)

    # =========================
    #         HELPERS
    # =========================
    def q_col(self, m: UMatrix, k: int) -> HPoint:
        return self.ctx.column_q(m, k)

    def sp(self, k: int, l: int) -> int:
        """sigma'_kl"""
        return self.inverse.get(k, l)

    def lam(self, exponent: int) -> int:
        return self.quad.lam_pow(exponent)

    def sum_of(self, *points: HPoint) -> HPoint:
        return self.ops.total(points)

    def hermitian_part(self, w: int) -> HPoint:
        """(0, w - bar(w) lam)"""
        r, q = self.ring, self.quad
        return HPoint(r.zero, r.s(w, r.m(q.bar(w), q.lam)))

    # =========================
    #        SHORT ROOTS
    # =========================
    def short_terms(self, move: ShortMove, tau: UMatrix, k: int) -> HPoint:
        r, q, ops = self.ring, self.quad, self.ops
        i, j, x = move.i, move.j, move.x
        x_tilde = r.n(r.m(self.lam((eps(j) - 1) // 2), q.bar(x), self.lam((1 - eps(i)) // 2)))
        first = ops.scale(self.q_col(self.sigma, i), r.m(x, self.sp(j, k)))
        second = ops.scale(self.q_col(self.sigma, -j), r.m(x_tilde, self.sp(-i, k)))

        if k == j:
            return self.sum_of(first, second, ops.scale(self.q_col(tau, i), r.n(x)))
        if k == -i:
            return self.sum_of(first, second, ops.scale(self.q_col(tau, -j), r.n(x_tilde)))
        delta_0k = HPoint(r.one if k == 0 else r.zero, r.zero)
        return self.sum_of(delta_0k, first, second)

    # =========================
    #     EXTRA-SHORT ROOTS
    # =========================
    def extra_terms(self, move: ExtraMove, rho: UMatrix, k: int) -> HPoint:
        r, q, ops = self.ring, self.quad, self.ops
        i, (y, z) = move.i, move.point
        e = eps(i)
        y_hat = r.n(r.m(self.lam(-(1 + e) // 2), q.bar(y), q.mu))
        z_hat = r.m(self.lam(-(1 + e) // 2), q.bar(z), self.lam((1 - e) // 2))
        q0 = ops.minus(self.q_col(self.sigma, 0), HPoint(r.one, r.zero))
        qi = self.q_col(self.sigma, i)

        def a(index: int) -> HPoint:
            if index < 0:
                return HPoint(y, r.m(q.bar(z), self.lam((1 - e) // 2)))
            return HPoint(y, r.m(self.lam((e + 1) // 2), z))

        common = [
            ops.scale(q0, r.m(y, self.sp(-i, k))),
            ops.scale(qi, r.m(y_hat, self.sp(0, k))),
            ops.scale(qi, r.m(z, self.sp(-i, k))),
        ]

        if k == 0:
            return self.sum_of(
                HPoint(r.one, r.zero),
                *common,
                ops.scale(self.q_col(rho, i), r.n(y_hat)),
                ops.scale(a(0), self.sp(-i, 0)),
            )

        if k == -i:
            corner = r.s(self.sp(-i, -i), r.one)
            back = self.sp(-i, 0)
            b = self.hermitian_part(r.m(q.bar(z) if i > 0 else z, corner))
            c = HPoint(y, r.m(q.lam, z)) if i > 0 else HPoint(y, z)
            if i > 0:
                d = self.hermitian_part(r.m(q.bar(self.sp(-i, -i)), q.bar(y), q.bar(self.sigma.get(0, 0)), q.mu, y))
            else:
                d = ops.zero
            return self.sum_of(
                *common,
                ops.scale(q0, r.n(r.m(y, back, y))),
                ops.scale(qi, r.n(r.m(y_hat, self.sp(0, 0), y))),
                ops.scale(qi, r.n(r.m(z, back, y))),
                ops.scale(self.q_col(rho, i), z_hat),
                ops.scale(a(-i), corner),
                b,
                ops.scale(c, r.n(r.m(back, y))),
                d,
            )

        return self.sum_of(*common, ops.scale(a(k), self.sp(-i, k)))

    # =========================
    #          CHECK
    # =========================
    def commutator(self, move: Move) -> UMatrix:
        match move:
            case ShortMove(i, j, x):
                return self.sigma.commutator(self.factory.short(i, j, x))
            case ExtraMove(i, point):
                return self.sigma.commutator(self.factory.extra(i, point))

    def residuals(self, move: Move) -> dict[int, tuple[HPoint, bool]]:
        """Per column k: the residual and whether it lies in the allowed set"""
        tau = self.commutator(move)
        ops = self.ops
        hb_set = self.residual_set(self.j_sigma)
        zero_set = self.residual_set(self.j_prime_sigma if isinstance(move, ShortMove) else self.j_sum)

        out = {}
        for k in self.ctx.theta.order:
            if isinstance(move, ShortMove):
                displayed = self.short_terms(move, tau, k)
            else:
                displayed = self.extra_terms(move, tau, k)
            residual = ops.plus(ops.neg(displayed), self.q_col(tau, k))
            out[k] = (residual, residual in (zero_set if k == 0 else hb_set))
        return out


def _check_move(factory: ElementaryFactory, move: Move) -> None:
    theta = factory.theta
    match move:
        case ShortMove(i, j, _):
            theta.check_pair(i, j)
        case ExtraMove(i, point):
            theta.check_hb(i)
            if HPoint(*point) not in factory.parameter_for(i):
                raise BadIndicesError(f"T_{i}{tuple(point)} needs a point of Delta^{-eps(i)}")


def verify_commutator_columns(factory: ElementaryFactory, sigma: UMatrix, move: Move) -> CheckResult:
    """
    Check every column identity of [sigma, move]. Columns are grouped into
    the three displayed cases so failures name the identity that broke.
    """
    _check_move(factory, move)
    identities = ColumnIdentities(factory, sigma)
    name = "commutator-columns-short" if isinstance(move, ShortMove) else "commutator-columns-extra"
    result = CheckResult(name=name)

    for k, (residual, ok) in identities.residuals(move).items():
        match move:
            case ShortMove(i, j, _):
                shape = "k=j" if k == j else "k=-i" if k == -i else "generic"
            case ExtraMove(i, _):
                shape = "k=0" if k == 0 else "k=-i" if k == -i else "generic"
        result.record(ok, lambda: {"k": k, "case": shape, "residual": list(residual), "move": _move_dict(move), "sigma": sigma.to_list()})

    return result


def _move_dict(move: Move) -> dict:
    match move:
        case ShortMove(i, j, x):
            return {"T": "short", "i": i, "j": j, "x": x}
        case ExtraMove(i, point):
            return {"T": "extra", "i": i, "x": point[0], "y": point[1]}


def random_move(factory: ElementaryFactory, rng: np.random.Generator) -> Move:
    theta = factory.theta
    if rng.random() < 0.5:
        pairs = theta.short_pairs()
        i, j = pairs[int(rng.integers(len(pairs)))]
        return ShortMove(i, j, int(rng.integers(factory.ring.size)))
    i = theta.hb[int(rng.integers(len(theta.hb)))]
    points = sorted(factory.parameter_for(i))
    return ExtraMove(i, points[int(rng.integers(len(points)))])


def sweep_commutator_columns(
    factory: ElementaryFactory,
    sigmas: Sequence[UMatrix],
    pairs: Optional[int] = None,
    seed: Optional[int] = None,
) -> list[CheckResult]:
    """Random (sigma, move) pairs; one merged result per root type"""
    pairs = pairs if pairs is not None else max(SETTINGS.samples // 100, 100)
    rng = np.random.default_rng(seed if seed is not None else SETTINGS.seed)
    merged = {
        "commutator-columns-short": CheckResult(name="commutator-columns-short", exhaustive=False),
        "commutator-columns-extra": CheckResult(name="commutator-columns-extra", exhaustive=False),
    }

    for _ in range(pairs):
        sigma = sigmas[int(rng.integers(len(sigmas)))]
        result = verify_commutator_columns(factory, sigma, random_move(factory, rng))
        merged[result.name].absorb(result)

    for result in merged.values():
        result.details["pairs"] = pairs
        logger.debug(f"{'✅' if result.passed else '❌'} {result.name}: {result.cases} columns")
    return list(merged.values())
