"""
Matrix arithmetic over finite rings.

Products go through the ring's numpy tables. Inversion reduces to the
commutative base ring: matrix-ring entries are expanded into blocks, entries
of S x S^op split into two base matrices, and integers mod m are inverted
by unit-pivot elimination per prime-power factor joined with the CRT.
"""

import numpy as np
from sympy import factorint

from rings.finite_ring import FiniteRing, _encode_digits
from utils.errors import NotInvertibleError, SizeMismatchError


def identity(ring: FiniteRing, dim: int) -> np.ndarray:
    out = np.full((dim, dim), ring.zero, dtype=np.int64)
    np.fill_diagonal(out, ring.one)
    return out


def matmul(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise SizeMismatchError(f"Cannot multiply {a.shape} by {b.shape}")

    products = ring.mul[a[:, :, None], b[None, :, :]]
    result = products[:, 0, :]
    for t in range(1, a.shape[1]):
        result = ring.add[result, products[:, t, :]]
    return result


def matvec(ring: FiniteRing, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(ring, a, np.asarray(v).reshape(-1, 1))[:, 0]


def matadd(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ring.add[a, b]


def matsub(ring: FiniteRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ring.add[a, ring.neg[b]]


# =========================
#        INVERSION
# =========================
def _invert_prime_power(matrix: np.ndarray, p: int, modulus: int) -> np.ndarray:
    dim = matrix.shape[0]
    aug = np.concatenate([matrix % modulus, np.eye(dim, dtype=np.int64)], axis=1)

    for col in range(dim):
        pivots = np.nonzero(aug[col:, col] % p)[0]
        if pivots.size == 0:
            raise NotInvertibleError(f"Singular modulo {modulus} at column {col}")
        row = col + int(pivots[0])
        if row != col:
            aug[[col, row]] = aug[[row, col]]

        aug[col] = (aug[col] * pow(int(aug[col, col]), -1, modulus)) % modulus
        factors = aug[:, col].copy()
        factors[col] = 0
        aug = (aug - np.outer(factors, aug[col])) % modulus

    return aug[:, dim:]


def invert_mod(matrix: np.ndarray, modulus: int) -> np.ndarray:
    """Inverse of an integer matrix modulo ``modulus``"""
    matrix = np.asarray(matrix, dtype=np.int64)
    result = np.zeros_like(matrix)

    for p, k in factorint(modulus).items():
        part = p**k
        rest = modulus // part
        # CRT idempotent: 1 mod part, 0 mod rest
        idempotent = (rest * pow(rest, -1, part)) % modulus
        inverse = _invert_prime_power(matrix, p, part)
        result = (result + inverse * idempotent) % modulus

    return result


def invert(ring: FiniteRing, a: np.ndarray) -> np.ndarray:
    """
    Two-sided inverse of a square matrix over ``ring``.

    Raises:
        NotInvertibleError: the matrix has no inverse
    """
    a = np.asarray(a)
    dim = a.shape[0]
    if a.shape != (dim, dim):
        raise SizeMismatchError(f"Only square matrices are invertible, got {a.shape}")

    spec = ring.spec
    q = spec.base_modulus

    match spec.kind:
        case "integers_mod" | "prime_field":
            return invert_mod(ring.coords[a], q)

        case "matrix":
            k = spec.dim
            blocks = ring.coords[a]
            big = blocks.transpose(0, 2, 1, 3).reshape(dim * k, dim * k)
            inverse = invert_mod(big, q)
            folded = inverse.reshape(dim, k, dim, k).transpose(0, 2, 1, 3)
            return _encode_digits(folded.reshape(dim, dim, k * k), q)

        case "product_opposite":
            pairs = ring.coords[a]
            first = invert_mod(pairs[..., 0], q)
            second = invert_mod(pairs[..., 1], q)
            return _encode_digits(np.stack([first, second], axis=-1), q)
