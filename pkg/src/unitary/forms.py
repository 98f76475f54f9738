from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from domain import CheckResult
from formparam.heisenberg import HeisenbergOps, HPoint, heisenberg
from formparam.parameters import FormParameter, delta_min
from rings.finite_ring import FiniteRing
from rings.quadruple import OddQuadruple
from unitary.matrix import UMatrix
from unitary.theta import Theta
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


@dataclass(frozen=True, kw_only=True, eq=False)
class FormsContext:
    """
    The odd hyperbolic module R^(2n+1) of an odd form ring (R, Delta) with

        b(u, v) = sum_{i>0} bar(u_i) v_-i + bar(u_0) mu v_0 + sum_{i<0} bar(u_i) lam v_-i
        q(u)    = (u_0, sum_{i>0} bar(u_i) u_-i)
    """

    n: int
    delta: FormParameter
    theta: Theta = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", Theta(self.n))

    @property
    def quad(self) -> OddQuadruple:
        return self.delta.quad

    @property
    def ring(self) -> FiniteRing:
        return self.delta.quad.ring

    @cached_property
    def ops(self) -> HeisenbergOps:
        return heisenberg(self.quad)

    @property
    def dim(self) -> int:
        return self.theta.dim

    def describe(self) -> dict:
        return {**self.quad.describe(), "n": self.n, "delta_size": len(self.delta)}

    # =========================
    #         VECTORS
    # =========================
    def zero_vector(self) -> np.ndarray:
        return np.full(self.dim, self.ring.zero, dtype=np.int64)

    def basis(self, i: int) -> np.ndarray:
        v = self.zero_vector()
        v[self.theta.pos(i)] = self.ring.one
        return v

    def coordinate(self, u: np.ndarray, i: int) -> int:
        return int(u[self.theta.pos(i)])

    def identity(self) -> UMatrix:
        return UMatrix.identity(self.ring, self.n)

    # =========================
    #          FORMS
    # =========================
    def lam_half(self, sign: int, e: int) -> int:
        """lam^(sign * (e + 1) / 2) for e = +-1, sign = +-1"""
        return self.quad.lam_pow(sign * (e + 1) // 2)

    def form_b(self, u: np.ndarray, v: np.ndarray) -> int:
        r, q = self.ring, self.quad
        terms = []
        for i in self.theta.plus:
            terms.append(r.m(q.bar(self.coordinate(u, i)), self.coordinate(v, -i)))
        terms.append(r.m(q.bar(self.coordinate(u, 0)), q.mu, self.coordinate(v, 0)))
        for i in self.theta.minus:
            terms.append(r.m(q.bar(self.coordinate(u, i)), q.lam, self.coordinate(v, -i)))
        return r.total(terms)

    def form_q(self, u: np.ndarray) -> HPoint:
        r, q = self.ring, self.quad
        second = r.total(r.m(q.bar(self.coordinate(u, i)), self.coordinate(u, -i)) for i in self.theta.plus)
        return HPoint(self.coordinate(u, 0), second)

    def column_q(self, sigma: UMatrix, j: int) -> HPoint:
        return self.form_q(sigma.col(j))

    @cached_property
    def gram(self) -> np.ndarray:
        """Matrix of b in basis order: [[0, 0, p], [0, mu, 0], [p lam, 0, 0]]"""
        g = np.full((self.dim, self.dim), self.ring.zero, dtype=np.int64)
        for i in self.theta.order:
            for j in self.theta.order:
                g[self.theta.pos(i), self.theta.pos(j)] = self.form_b(self.basis(i), self.basis(j))
        return g

    # =========================
    #         VECTORS OF M
    # =========================
    def all_vectors(self, coordinate_sets: Optional[dict[int, Iterable[int]]] = None) -> Iterable[np.ndarray]:
        """Every vector, optionally restricting coordinate i to coordinate_sets[i]"""
        pools = []
        for i in self.theta.order:
            allowed = (coordinate_sets or {}).get(i)
            pools.append(sorted(allowed) if allowed is not None else list(self.ring.elements))

        grids = np.meshgrid(*[np.asarray(p) for p in pools], indexing="ij")
        stacked = np.stack([g.ravel() for g in grids], axis=1)
        for row in stacked:
            yield row

    def vector_count(self, coordinate_sets: Optional[dict[int, Iterable[int]]] = None) -> int:
        total = 1
        for i in self.theta.order:
            allowed = (coordinate_sets or {}).get(i)
            total *= len(set(allowed)) if allowed is not None else self.ring.size
        return total

    def scale_vector(self, u: np.ndarray, x: int) -> np.ndarray:
        """u x (right scalar multiplication)"""
        return self.ring.mul[u, x]

    def add_vectors(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.ring.add[u, v]


def verify_form_identities(ctx: FormsContext, samples: int = 2000, seed: int = 37) -> list[CheckResult]:
    """
    Sesquilinearity and lam-Hermitian symmetry of b, q(u x) = q(u).x,
    q(u + v) = q(u) + q(v) + (0, b(u, v)) mod Delta_min and tr(q(u)) = b(u, u).
    """
    ring, quad, ops = ctx.ring, ctx.quad, ctx.ops
    rng = np.random.default_rng(seed)
    d_min = delta_min(quad)
    total = ctx.vector_count()
    exhaustive = total * total <= 4096

    if exhaustive:
        vectors = list(ctx.all_vectors())
        pairs = [(u, v) for u in vectors for v in vectors]
    else:
        pairs = [tuple(rng.integers(0, ring.size, size=(2, ctx.dim))) for _ in range(samples)]

    checks = {
        name: CheckResult(name=name, exhaustive=exhaustive)
        for name in ("b-biadditive", "b-sesquilinear", "b-hermitian", "q-homogeneous", "q-additive-mod-delta-min", "trace-of-q")
    }

    for u, v in pairs:
        x, y = int(rng.integers(ring.size)), int(rng.integers(ring.size))
        w = ctx.add_vectors(u, v)
        witness = {"u": u.tolist(), "v": v.tolist(), "x": x, "y": y}

        checks["b-biadditive"].record(
            ctx.form_b(w, u) == ring.a(ctx.form_b(u, u), ctx.form_b(v, u))
            and ctx.form_b(u, w) == ring.a(ctx.form_b(u, u), ctx.form_b(u, v)),
            witness,
        )
        checks["b-sesquilinear"].record(
            ctx.form_b(ctx.scale_vector(u, x), ctx.scale_vector(v, y)) == ring.m(quad.bar(x), ctx.form_b(u, v), y),
            witness,
        )
        checks["b-hermitian"].record(ctx.form_b(u, v) == ring.m(quad.bar(ctx.form_b(v, u)), quad.lam), witness)
        checks["q-homogeneous"].record(ctx.form_q(ctx.scale_vector(u, x)) == ops.scale(ctx.form_q(u), x), witness)
        expected = ops.plus(ops.plus(ctx.form_q(u), ctx.form_q(v)), HPoint(ring.zero, ctx.form_b(u, v)))
        checks["q-additive-mod-delta-min"].record(ops.minus(ctx.form_q(w), expected) in d_min, witness)
        checks["trace-of-q"].record(ops.trace(ctx.form_q(u)) == ctx.form_b(u, u), witness)

    return list(checks.values())
