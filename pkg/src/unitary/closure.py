"""
Finite subgroups of U_2n+1(R, Delta) as explicit sets of matrices.
"""

from typing import Iterable, Optional, Sequence

import numpy as np

from formparam.heisenberg import HPoint
from unitary.forms import FormsContext
from unitary.matrix import UMatrix
from utils.config import SETTINGS
from utils.errors import ClosureOverflowError, EnumerationOverflowError, NotInvertibleError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


def generate_group(gens: Iterable[UMatrix], cap: Optional[int] = None, identity: Optional[UMatrix] = None) -> frozenset[UMatrix]:
    """
    Subgroup generated by ``gens``, grown breadth-first by right
    multiplication. In a finite group this is already inverse-closed.

    Raises:
        ClosureOverflowError: more than ``cap`` elements
    """
    gens = sorted(set(gens))
    cap = cap if cap is not None else SETTINGS.closure_cap
    if identity is None:
        if not gens:
            raise ValueError("Need a generator or an explicit identity")
        identity = UMatrix.identity(gens[0].ring, gens[0].n)

    seen = {identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for g in frontier:
            for s in gens:
                h = g @ s
                if h not in seen:
                    seen.add(h)
                    fresh.append(h)
                    if len(seen) > cap:
                        raise ClosureOverflowError(
                            f"Group closure exceeded {cap} elements",
                            details={"cap": cap, "generators": len(gens)},
                        )
        frontier = fresh

    logger.debug(f"📊 Closure of {len(gens)} generators: {len(seen)} elements")
    return frozenset(seen)


def _column_candidates(ctx: FormsContext, j: int, vectors: np.ndarray) -> list[np.ndarray]:
    """Vectors v with b(v, v) = b(e_j, e_j) and q(v) - (delta_0j, 0) in Delta"""
    ring, ops = ctx.ring, ctx.ops
    target = HPoint(ring.one if j == 0 else ring.zero, ring.zero)
    norm = ctx.form_b(ctx.basis(j), ctx.basis(j))
    return [v for v in vectors if ctx.form_b(v, v) == norm and ops.minus(ctx.form_q(v), target) in ctx.delta]


def enumerate_unitary_group(ctx: FormsContext, cap: Optional[int] = None, limit: Optional[int] = None) -> list[UMatrix]:
    """
    Every element of U_2n+1(R, Delta), found column by column: each new
    column must satisfy the column condition on q and have the right b-values
    against every column chosen before it. Survivors are kept when invertible.

    Raises:
        EnumerationOverflowError: the module has more than ``cap`` vectors or
            the group has more than ``limit`` elements
    """
    cap = cap if cap is not None else SETTINGS.enumeration_cap
    limit = limit if limit is not None else SETTINGS.closure_cap
    count = ctx.vector_count()
    if count > cap:
        raise EnumerationOverflowError(
            f"Module has {count} vectors, enumeration cap is {cap}",
            details={"vectors": count, "cap": cap},
        )

    vectors = np.array(list(ctx.all_vectors()))
    order = ctx.theta.order
    candidates = {j: _column_candidates(ctx, j, vectors) for j in order}
    gram = {(a, b): ctx.form_b(ctx.basis(a), ctx.basis(b)) for a in order for b in order}
    found: list[UMatrix] = []

    def extend(columns: list[np.ndarray]) -> None:
        k = len(columns)
        if k == len(order):
            sigma = UMatrix(ctx.ring, np.stack(columns, axis=1))
            try:
                sigma.inverse()
            except NotInvertibleError:
                return
            found.append(sigma)
            if len(found) > limit:
                raise EnumerationOverflowError(f"Unitary group has more than {limit} elements", details={"limit": limit})
            return

        j = order[k]
        for v in candidates[j]:
            if all(
                ctx.form_b(columns[t], v) == gram[(order[t], j)] and ctx.form_b(v, columns[t]) == gram[(j, order[t])]
                for t in range(k)
            ):
                extend(columns + [v])

    extend([])
    logger.info(f"📊 U_{ctx.dim}({ctx.ring.spec.label()}, Delta) has {len(found)} elements")
    return sorted(found)


def random_products(gens: Sequence[UMatrix], count: int, length: int, rng: np.random.Generator) -> list[UMatrix]:
    """``count`` products of ``length`` generators drawn uniformly with ``rng``"""
    if not gens:
        raise ValueError("Need at least one generator")
    products = []
    for _ in range(count):
        word = rng.integers(len(gens), size=length)
        g = gens[int(word[0])]
        for k in word[1:]:
            g = g @ gens[int(k)]
        products.append(g)
    return products
