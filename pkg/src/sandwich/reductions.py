"""
Column reductions by triangular elementary matrices.

    reduce_first_entry   f in TEU (upper unitriangular) with (f sigma)_11 left invertible
    reduce_two_columns   f in UEU with the top halves of the first two columns of
                         f sigma equal to e_1 and e_2

Every factor is recorded as a generator token, so ``f`` can be rebuilt from
its word. Stable range steps are realized by exhaustive scans of the finite
ring, the even unitary step by a bounded search over upper-triangular moves.
"""

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from domain import CheckResult
from formparam.derived import vertical_part
from formparam.heisenberg import HPoint
from formparam.ideals import is_left_unimodular
from rings.finite_ring import FiniteRing
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.membership import is_unitary
from unitary.words import Token, evaluate_word, extra_token, short_token
from utils.errors import (
    BadIndicesError,
    NoShiftFoundError,
    PointNotInParameterError,
    ReductionFailedError,
    SizeMismatchError,
)
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

# Deepest product of moves tried by the even unitary search
SEARCH_DEPTH = 3

Move = tuple[Token, UMatrix]


# =========================
#     UNIMODULAR SHIFTS
# =========================
def find_unimodular_shift(ring: FiniteRing, u: Sequence[int], m: int) -> int:
    """
    x with (u_1 + x u_(m+1), u_2, ..., u_m) left unimodular, for a left
    unimodular column (u_1, ..., u_(m+1)). Zero is tried first, then R in
    index order.

    Raises:
        SizeMismatchError: u does not have m + 1 entries
        NoShiftFoundError: u is not unimodular, or no shift exists
    """
    u = [int(x) for x in u]
    if m < 1 or len(u) != m + 1:
        raise SizeMismatchError(f"Expected a column of {m + 1} entries, got {len(u)}")
    if not is_left_unimodular(ring, u):
        raise NoShiftFoundError("Column is not left unimodular", details={"column": u, "m": m})

    rest, last = u[1:m], u[m]
    candidates = [ring.zero] + [x for x in ring.elements if x != ring.zero]
    for x in candidates:
        if is_left_unimodular(ring, [ring.a(u[0], ring.m(x, last)), *rest]):
            return x

    raise NoShiftFoundError("No unimodular shift exists", details={"column": u, "m": m})


# =========================
#         RESULTS
# =========================
@dataclass(kw_only=True)
class ReductionResult:
    """f, the reduced matrix f sigma, the factor word of f and its certificate"""

    f: UMatrix
    reduced: UMatrix
    factors: list[Token]
    certificate: CheckResult
    stages: dict[str, int] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.certificate.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "f": self.f.to_list(),
            "reduced": self.reduced.to_list(),
            "factors": self.factors,
            "stages": self.stages,
            "certificate": self.certificate.to_dict(),
            "notes": self.notes,
        }


def is_upper_unitriangular(sigma: UMatrix) -> bool:
    ring, e = sigma.ring, sigma.entries
    lower = np.tril(np.ones(e.shape, dtype=bool), k=-1)
    return bool((e[lower] == ring.zero).all() and (np.diag(e) == ring.one).all())


def has_ueu_support(sigma: UMatrix) -> bool:
    """Block form [[A, B, C], [0, 1, D], [0, 0, E]] for the blocks plus, 0, minus"""
    ring, theta, e = sigma.ring, sigma.theta, sigma.entries
    plus = [theta.pos(i) for i in theta.plus]
    minus = [theta.pos(i) for i in theta.minus]
    zero = theta.pos(0)
    if int(e[zero, zero]) != ring.one:
        return False
    if any(int(e[zero, p]) != ring.zero for p in plus):
        return False
    below = [(r, c) for r in minus for c in plus + [zero]]
    return all(int(e[r, c]) == ring.zero for r, c in below)


# =========================
#        REDUCER
# =========================
class ColumnReducer:
    """Applies elementary moves on the left of sigma and records them"""

    def __init__(self, factory: ElementaryFactory, sigma: UMatrix):
        self.factory = factory
        self.ctx = factory.ctx
        self.ring = factory.ring
        self.quad = factory.quad
        self.theta = factory.theta
        self.sigma = sigma
        self.current = sigma
        self.f = self.ctx.identity()
        self.factors: list[Token] = []
        self.stages: dict[str, int] = {}

    # =========================
    #         MOVES
    # =========================
    def short_move(self, i: int, j: int, x: int) -> Move:
        return short_token(i, j, x), self.factory.short(i, j, x)

    def extra_move(self, i: int, a: HPoint) -> Move:
        return extra_token(i, a), self.factory.extra(i, a)

    def apply(self, move: Move, stage: str) -> None:
        token, matrix = move
        if matrix.is_identity():
            return
        self.current = matrix @ self.current
        self.f = matrix @ self.f
        self.factors.insert(0, token)
        self.stages[stage] = self.stages.get(stage, 0) + 1

    def entry(self, i: int, j: int) -> int:
        return self.current.get(i, j)

    def fail(self, message: str, **details) -> ReductionFailedError:
        return ReductionFailedError(message, details={"sigma": self.sigma.to_list(), **details})

    # =========================
    #        SEARCHES
    # =========================
    def search(self, column: np.ndarray, moves: list[Move], goal: Callable[[np.ndarray], bool]) -> Optional[list[Move]]:
        """Shortest product of at most SEARCH_DEPTH moves taking ``column`` into ``goal``"""
        for depth in range(SEARCH_DEPTH + 1):
            for combo in itertools.product(moves, repeat=depth):
                v = column
                for _, matrix in combo:
                    v = matrix.apply(v)
                if goal(v):
                    return list(combo)
        logger.debug(f"🔧 No product of {SEARCH_DEPTH} moves out of {len(moves)} reaches the goal")
        return None

    def unimodular_rows(self, rows: Sequence[int]) -> Callable[[np.ndarray], bool]:
        positions = [self.theta.pos(i) for i in rows]
        return lambda v: is_left_unimodular(self.ring, [int(v[p]) for p in positions])

    # =========================
    #          STEPS
    # =========================
    def extra_short_correction(self) -> None:
        """
        T_1(a) with a = (-sigma_0,-1 bar(x), underbar(bar(bar(x)) q2(sigma_*,-1) bar(x)))
        makes the hyperbolic part of the first column unimodular.
        """
        r, q = self.ring, self.quad
        inverse = self.current.inverse()
        u = self.current.col(1)
        hb = [int(u[self.theta.pos(i)]) for i in self.theta.hb]
        v0u0 = r.m(inverse.get(1, 0), self.entry(0, 1))

        x = find_unimodular_shift(r, hb + [v0u0], len(hb))
        xb = q.bar(x)
        q2 = self.ctx.column_q(self.current, -1).y
        a = HPoint(r.n(r.m(self.entry(0, -1), xb)), q.underbar(r.m(q.bar(xb), q2, xb)))
        try:
            self.apply(self.extra_move(1, a), "extra-short")

        except PointNotInParameterError as e:
            raise self.fail("Correction point is not in Delta^-1", point=list(a), cause=e.to_dict())

    def even_unitary_step(self) -> None:
        """Upper-triangular moves T_l,-j(x) and T_l(0, y) until rows 1..n of column 1 are unimodular"""
        r, theta = self.ring, self.theta
        lam_inverse = vertical_part(self.factory.inverse_delta.elements, r.zero)
        moves = [self.short_move(l, -j, x) for l in theta.plus for j in theta.plus if l != j for x in r.elements if x != r.zero]
        moves += [self.extra_move(l, HPoint(r.zero, y)) for l in theta.plus for y in sorted(lam_inverse) if y != r.zero]

        found = self.search(self.current.col(1), moves, self.unimodular_rows(theta.plus))
        if found is None:
            raise self.fail("Even unitary step found no unimodular top")
        for move in found:
            self.apply(move, "even-unitary")

    def shift_into_head(self, rows: Sequence[int], column: Callable[[], np.ndarray], stage: str) -> None:
        """T_(head, rows[m])(x) for m from the last row down, leaving a unit at the head"""
        head = rows[0]
        for m in range(len(rows) - 1, 0, -1):
            v = column()
            u = [int(v[self.theta.pos(i)]) for i in rows[: m + 1]]
            x = find_unimodular_shift(self.ring, u, m)
            self.apply(self.short_move(head, rows[m], x), stage)

        if not self.ring.left_inverses(int(column()[self.theta.pos(head)])):
            raise self.fail(f"Entry at row {head} is not left invertible after shifting")

    def normalize_top(self, rows: Sequence[int], column: Callable[[], np.ndarray], stage: str) -> None:
        """
        Bring the rows ``rows`` of ``column()`` from a unimodular vector to
        (1, 0, ..., 0) with T_kl for k, l in ``rows``. Needs two rows.
        """
        r, pos = self.ring, self.theta.pos
        head, second = rows[0], rows[1]
        self.shift_into_head(rows, column, stage)

        a = int(column()[pos(head)])
        a_inverse = r.inverse(a)
        for l in rows[1:]:
            w = int(column()[pos(l)])
            self.apply(self.short_move(l, head, r.n(r.m(w, a_inverse))), stage)

        # a e_head -> e_head with three moves in the (head, second) plane
        if a != r.one:
            self.apply(self.short_move(second, head, r.one), stage)
            self.apply(self.short_move(head, second, r.m(r.s(r.one, a), a_inverse)), stage)
            self.apply(self.short_move(second, head, r.n(a)), stage)

    # =========================
    #       CERTIFICATES
    # =========================
    def certify(self, name: str, support: Callable[[UMatrix], bool]) -> CheckResult:
        check = CheckResult(name=name)
        check.record(evaluate_word(self.factory, self.factors) == self.f, {"condition": "word-evaluates-to-f"})
        for token in self.factors:
            check.record(support(evaluate_word(self.factory, [token])), {"condition": "factor-support", "factor": token})
        check.record(support(self.f), {"condition": "f-support"})
        check.record(self.f @ self.sigma == self.current, {"condition": "reduced-is-f-sigma"})
        check.record(is_unitary(self.ctx, self.current), {"condition": "reduced-is-unitary"})
        return check

    def result(self, certificate: CheckResult, **notes) -> ReductionResult:
        return ReductionResult(
            f=self.f,
            reduced=self.current,
            factors=list(self.factors),
            certificate=certificate,
            stages=dict(self.stages),
            notes=notes,
        )


def _require(sigma: UMatrix, factory: ElementaryFactory, minimum: int) -> None:
    if sigma.n != factory.theta.n:
        raise SizeMismatchError(f"Matrix of rank {sigma.n} for a factory of rank {factory.theta.n}")
    if sigma.n < minimum:
        raise BadIndicesError(f"Reduction needs n >= {minimum}, got n = {sigma.n}")
    if not is_unitary(factory.ctx, sigma):
        raise ReductionFailedError("Input is not unitary", details={"sigma": sigma.to_list()})


# =========================
#     FIRST ENTRY (TEU)
# =========================
def reduce_first_entry(factory: ElementaryFactory, sigma: UMatrix) -> ReductionResult:
    """
    f in TEU with (f sigma)_11 left invertible.

    Raises:
        BadIndicesError: n < 2
        ReductionFailedError: non-unitary input or a step without a move
    """
    _require(sigma, factory, 2)
    reducer = ColumnReducer(factory, sigma)
    column = lambda: reducer.current.col(1)

    reducer.extra_short_correction()
    reducer.even_unitary_step()
    reducer.shift_into_head(list(factory.theta.plus), column, "stable-range")

    certificate = reducer.certify("reduction-first-entry", is_upper_unitriangular)
    corner = reducer.entry(1, 1)
    certificate.record(bool(factory.ring.left_inverses(corner)), {"condition": "corner-left-invertible", "corner": corner})

    logger.debug(f"{'✅' if certificate.passed else '❌'} First entry reduced with {len(reducer.factors)} factors {reducer.stages}")
    return reducer.result(certificate, corner=corner)


# =========================
#    TWO COLUMNS (UEU)
# =========================
def _first_column_clears(reducer: ColumnReducer) -> dict[str, Any]:
    """
    With the top of column 1 equal to e_1: clearing rows -n..-2 by T_j1 leaves
    e_1 + e_0 x + e_-1 y, and T_-1(-(x, y)) takes that to e_1.
    """
    factory, ctx, r = reducer.factory, reducer.ctx, reducer.ring
    u = reducer.current.col(1)
    clear = ctx.identity()
    for j in factory.theta.minus:
        if j != -1:
            clear = factory.short(j, 1, r.n(int(u[ctx.theta.pos(j)]))) @ clear
    u3 = clear.apply(u)
    point = ctx.form_q(u3)
    expected = ctx.add_vectors(ctx.add_vectors(ctx.basis(1), ctx.scale_vector(ctx.basis(0), point.x)), ctx.scale_vector(ctx.basis(-1), point.y))
    shaped = bool((u3 == expected).all())
    if not shaped or point not in ctx.delta:
        return {"shaped": shaped, "point": list(point), "cleared": False}
    u4 = factory.extra(-1, ctx.ops.neg(point)).apply(u3)
    return {"shaped": shaped, "point": list(point), "cleared": bool((u4 == ctx.basis(1)).all())}


def reduce_two_columns(factory: ElementaryFactory, sigma: UMatrix) -> ReductionResult:
    """
    f in UEU with rows 1..n of the first two columns of f sigma equal to
    e_1 and e_2.

    Raises:
        BadIndicesError: n < 3
        ReductionFailedError: non-unitary input or a step without a move
    """
    _require(sigma, factory, 3)
    theta, r = factory.theta, factory.ring
    reducer = ColumnReducer(factory, sigma)
    first = lambda: reducer.current.col(1)

    # f1, f2: top of column 1 becomes e_1
    reducer.extra_short_correction()
    reducer.even_unitary_step()
    reducer.normalize_top(list(theta.plus), first, "first-column")
    clears = _first_column_clears(reducer)

    # f3: column 2 of tau xi with xi = T_12(-F), using indices 2..n only
    big_f = reducer.entry(1, 2)
    xi = factory.short(1, 2, r.n(big_f))
    second = lambda: (reducer.current @ xi).col(2)
    rows = [i for i in theta.plus if i != 1]
    _rank_one_less_unimodular(reducer, rows, second)
    reducer.normalize_top(rows, second, "second-column")

    # f4: clear B' below the 1 of column 1
    for j in rows:
        reducer.apply(reducer.short_move(j, 1, r.n(reducer.entry(j, 1))), "clear-first-column")

    # f5: clear F
    reducer.apply(reducer.short_move(1, 2, r.n(reducer.entry(1, 2))), "clear-corner")

    certificate = reducer.certify("reduction-two-columns", has_ueu_support)
    for j, target in ((1, 1), (2, 2)):
        column = reducer.current.col(j)
        top = [int(column[theta.pos(i)]) for i in theta.plus]
        expected = [r.one if i == target else r.zero for i in theta.plus]
        certificate.record(top == expected, {"condition": f"column-{j}-top", "top": top})
    certificate.record(clears["cleared"], {"condition": "first-column-clears", **clears})

    logger.debug(f"{'✅' if certificate.passed else '❌'} Two columns reduced with {len(reducer.factors)} factors {reducer.stages}")
    return reducer.result(certificate, first_column_clears=clears)


def _rank_one_less_unimodular(reducer: ColumnReducer, rows: list[int], column: Callable[[], np.ndarray]) -> None:
    """Moves of the embedded rank n-1 group (indices 2..n) until rows 2..n of ``column()`` are unimodular"""
    factory, r = reducer.factory, reducer.ring
    nonzero = [x for x in r.elements if x != r.zero]
    moves = [reducer.short_move(k, l, x) for k in rows for l in rows if k != l for x in nonzero]
    moves += [reducer.short_move(k, -l, x) for k in rows for l in rows if k != l for x in nonzero]
    moves += [reducer.extra_move(k, a) for k in rows for a in sorted(factory.parameter_for(k)) if a != (r.zero, r.zero)]

    found = reducer.search(column(), moves, reducer.unimodular_rows(rows))
    if found is None:
        raise reducer.fail("Second column has no unimodular top in rows 2..n")
    for move in found:
        reducer.apply(move, "second-column")


# =========================
#          SWEEPS
# =========================
def sweep_reductions(factory: ElementaryFactory, sigmas: Sequence[UMatrix]) -> list[CheckResult]:
    """Both reductions on every sigma; one merged certificate per reduction"""
    reductions = [("reductions-first-entry", reduce_first_entry, 2), ("reductions-two-columns", reduce_two_columns, 3)]
    results = []
    for name, reduce, minimum in reductions:
        merged = CheckResult(name=name)
        if factory.theta.n < minimum:
            merged.details["skipped"] = f"needs n >= {minimum}"
            results.append(merged)
            continue

        for sigma in sigmas:
            try:
                merged.absorb(reduce(factory, sigma).certificate)

            except (ReductionFailedError, NoShiftFoundError) as e:
                merged.record(False, {"sigma": sigma.to_list(), "error": e.to_dict()})

        merged.details["inputs"] = len(sigmas)
        logger.info(f"{'✅' if merged.passed else '❌'} {name}: {len(sigmas)} inputs, {merged.failures} failures")
        results.append(merged)
    return results
