"""
Generator words as JSON tokens.

    {"T": "short", "i": 1, "j": -2, "x": 5}
    {"T": "extra", "i": -1, "x": 3, "y": 0}
    {"T": "P", "i": 1, "j": 2}
    {"T": "matrix", "entries": [[...], ...]}

Ring elements are element indices.
"""

from typing import Any, Iterable

import numpy as np

from formparam.heisenberg import HPoint
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from utils.errors import SpecInvalidError

Token = dict[str, Any]


def short_token(i: int, j: int, x: int) -> Token:
    return {"T": "short", "i": int(i), "j": int(j), "x": int(x)}


def extra_token(i: int, a: tuple[int, int]) -> Token:
    return {"T": "extra", "i": int(i), "x": int(a[0]), "y": int(a[1])}


def permutation_token(i: int, j: int) -> Token:
    return {"T": "P", "i": int(i), "j": int(j)}


def matrix_token(sigma: UMatrix) -> Token:
    return {"T": "matrix", "entries": sigma.to_list()}


def parse_token(factory: ElementaryFactory, token: Token) -> UMatrix:
    """
    Raises:
        SpecInvalidError: unknown or malformed token
        BadIndicesError, PointNotInParameterError: from the factory
    """
    try:
        match token.get("T"):
            case "short":
                return factory.short(int(token["i"]), int(token["j"]), int(token["x"]))
            case "extra":
                return factory.extra(int(token["i"]), HPoint(int(token["x"]), int(token["y"])))
            case "P":
                return factory.permutation(int(token["i"]), int(token["j"]))
            case "matrix":
                return UMatrix(factory.ring, np.asarray(token["entries"]))
            case other:
                raise SpecInvalidError(f"Unknown generator token type {other!r}", details={"token": token})

    except (KeyError, TypeError) as e:
        raise SpecInvalidError(f"Malformed generator token {token}: {e}", details={"token": token})


def evaluate_word(factory: ElementaryFactory, tokens: Iterable[Token]) -> UMatrix:
    """Product of the tokens from left to right; the empty word is e"""
    result = factory.ctx.identity()
    for token in tokens:
        result = result @ parse_token(factory, token)
    return result
