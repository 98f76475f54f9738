"""
Block embeddings of smaller unitary groups into U_2n+1(R, Delta).

    even:  [[A, B], [C, D]]  ->  [[A, 0, B], [0, e, 0], [C, 0, D]]   (e of size 1 + 2(n - m))
    odd:   sigma             ->  diag(e, sigma, e)                    (e of size n - m)
"""

import numpy as np

from domain import CheckResult
from formparam.derived import vertical_part
from rings import linalg
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.membership import is_unitary
from utils.errors import SizeMismatchError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)


def _check_rank(m: int, n: int) -> None:
    if not 1 <= m <= n:
        raise SizeMismatchError(f"Cannot embed rank {m} into rank {n}")


def embed_even(ctx: FormsContext, block: np.ndarray) -> UMatrix:
    """Embed a 2m x 2m matrix (hyperbolic basis order) into rank n"""
    block = np.asarray(block)
    size = block.shape[0]
    if block.shape != (size, size) or size % 2:
        raise SizeMismatchError(f"Expected an even square matrix, got shape {block.shape}")
    m, n = size // 2, ctx.n
    _check_rank(m, n)

    big = linalg.identity(ctx.ring, ctx.dim)
    big[:m, :m] = block[:m, :m]
    big[:m, -m:] = block[:m, m:]
    big[-m:, :m] = block[m:, :m]
    big[-m:, -m:] = block[m:, m:]
    return UMatrix(ctx.ring, big)


def embed_odd(ctx: FormsContext, sigma: UMatrix) -> UMatrix:
    """diag(e, sigma, e); the cached inverse of sigma is embedded along"""
    m, n = sigma.n, ctx.n
    _check_rank(m, n)
    if sigma.ring is not ctx.ring:
        raise SizeMismatchError("Matrix lives over a different ring")

    def place(entries: np.ndarray) -> np.ndarray:
        big = linalg.identity(ctx.ring, ctx.dim)
        offset = n - m
        big[offset:offset + sigma.theta.dim, offset:offset + sigma.theta.dim] = entries
        return big

    image = UMatrix(ctx.ring, place(sigma.entries))
    if sigma._inverse is not None:
        image._inverse = UMatrix(ctx.ring, place(sigma._inverse.entries), inverse=image)
    return image


def shift_index(i: int, m: int, n: int) -> int:
    """Index of rank n that embed_odd sends index i of rank m to"""
    if i == 0:
        return 0
    return i + (n - m) if i > 0 else i - (n - m)


def verify_embeddings(ctx: FormsContext, m: int, samples: int = 200, seed: int = 37) -> list[CheckResult]:
    """
    Both embeddings from rank m: identity goes to identity, elementary
    matrices go to the matching elementary matrices of rank n, images are
    unitary and products are preserved on seeded random pairs.
    """
    _check_rank(m, ctx.n)
    ring = ctx.ring
    rng = np.random.default_rng(seed)
    small = FormsContext(n=m, delta=ctx.delta)
    small_f, big_f = ElementaryFactory(small), ElementaryFactory(ctx)

    shorts = [(i, j, x) for i, j in small.theta.short_pairs() for x in ring.elements]
    extras = [(i, a) for i in small.theta.hb for a in sorted(small_f.parameter_for(i))]
    longs = [(i, y) for i in small.theta.hb for y in sorted(vertical_part(small_f.parameter_for(i), ring.zero))]

    identity = CheckResult(name="embedding-identity")
    identity.record(embed_odd(ctx, small.identity()).is_identity(), {"embedding": "odd"})
    identity.record(embed_even(ctx, small.identity().hb_block()).is_identity(), {"embedding": "even"})

    elementary = CheckResult(name="embedding-elementary")
    for i, j, x in shorts:
        source = small_f.short(i, j, x)
        elementary.record(
            embed_odd(ctx, source) == big_f.short(shift_index(i, m, ctx.n), shift_index(j, m, ctx.n), x),
            {"embedding": "odd", "short": [i, j, x]},
        )
        elementary.record(embed_even(ctx, source.hb_block()) == big_f.short(i, j, x), {"embedding": "even", "short": [i, j, x]})
    for i, a in extras:
        elementary.record(embed_odd(ctx, small_f.extra(i, a)) == big_f.extra(shift_index(i, m, ctx.n), a), {"embedding": "odd", "extra": [i, *a]})
    for i, y in longs:
        elementary.record(embed_even(ctx, small_f.long(i, y).hb_block()) == big_f.long(i, y), {"embedding": "even", "long": [i, y]})

    homomorphism = CheckResult(name="embedding-homomorphism", exhaustive=False)
    unitary = CheckResult(name="embedding-unitary", exhaustive=False)
    odd_pool = [small_f.short(*s) for s in shorts] + [small_f.extra(*e) for e in extras]
    even_pool = [small_f.short(*s).hb_block() for s in shorts] + [small_f.long(*l).hb_block() for l in longs]

    for _ in range(samples):
        a, b = (odd_pool[int(k)] for k in rng.integers(len(odd_pool), size=2))
        homomorphism.record(embed_odd(ctx, a @ b) == embed_odd(ctx, a) @ embed_odd(ctx, b), {"embedding": "odd"})
        unitary.record(is_unitary(ctx, embed_odd(ctx, a @ b)), lambda: {"embedding": "odd", "matrix": (a @ b).to_list()})

        c, d = (even_pool[int(k)] for k in rng.integers(len(even_pool), size=2))
        cd = linalg.matmul(ring, c, d)
        homomorphism.record(embed_even(ctx, cd) == embed_even(ctx, c) @ embed_even(ctx, d), {"embedding": "even"})
        unitary.record(is_unitary(ctx, embed_even(ctx, cd)), lambda: {"embedding": "even", "block": cd.tolist()})

    return [identity, elementary, homomorphism, unitary]
