from random import Random
from typing import Any

from action.scenario import m2f2_block_subgroup
from factory.data.models import WordParameters
from sandwich.levels import SubgroupHandle
from unitary.forms import FormsContext
from unitary.generators import ElementaryFactory
from unitary.matrix import UMatrix
from unitary.words import Token, evaluate_word, extra_token, permutation_token, short_token
from utils.errors import SpecInvalidError
from utils.logging_config import setup_logging, get_logger

setup_logging()
logger = get_logger(__name__)

BUILTIN_SUBGROUPS = {
    "m2f2_block_H": m2f2_block_subgroup,
}


### WORDS ###
def random_token(factory: ElementaryFactory, parameters: WordParameters, random: Random) -> Token:
    """One elementary generator drawn uniformly from the enabled families"""
    theta = factory.theta
    families = ["short"]
    if parameters.include_extra:
        families.append("extra")
    if parameters.include_permutations:
        families.append("P")

    match random.choice(families):
        case "short":
            i, j = random.choice(theta.short_pairs())
            return short_token(i, j, random.randrange(factory.ring.size))
        case "extra":
            i = random.choice(theta.hb)
            return extra_token(i, random.choice(sorted(factory.parameter_for(i))))
        case "P":
            i, j = random.choice(theta.short_pairs())
            return permutation_token(i, j)


def generate_words(factory: ElementaryFactory, parameters: WordParameters) -> list[list[Token]]:
    """
    Random generator words with lengths drawn from
    [min_length, max_length]; deterministic in the seed.
    """
    random = Random(parameters.random_seed)
    words = []
    for _ in range(parameters.count):
        length = random.randint(parameters.min_length, parameters.max_length)
        words.append([random_token(factory, parameters, random) for _ in range(length)])
    return words


def generate_elements(factory: ElementaryFactory, parameters: WordParameters) -> list[UMatrix]:
    """The products of ``generate_words``"""
    return [evaluate_word(factory, word) for word in generate_words(factory, parameters)]


### DOCUMENTS ###
def _words(document: Any, key: str) -> list[list[Token]]:
    words = document.get(key) if isinstance(document, dict) else document
    if not isinstance(words, list):
        raise SpecInvalidError(f"Expected a list of generator words under '{key}'", details={"document": document})

    # A bare token stands for a word of length one
    return [[w] if isinstance(w, dict) else list(w) for w in words]


def witnesses_from_document(ctx: FormsContext, document: Any) -> list[UMatrix]:
    """
    ``{"witnesses": [word, ...]}`` or a bare list of words.

    Raises:
        SpecInvalidError: malformed words or tokens
    """
    factory = ElementaryFactory(ctx)
    return [evaluate_word(factory, word) for word in _words(document, "witnesses")]


def subgroup_from_document(ctx: FormsContext, document: Any) -> SubgroupHandle:
    """
    ``{"builtin": "m2f2_block_H"}`` or
    ``{"name": "...", "generators": [word, ...], "cap": 5000}``.

    Raises:
        SpecInvalidError: unknown builtin or malformed generators
    """
    if isinstance(document, str):
        document = {"builtin": document}

    if isinstance(document, dict) and "builtin" in document:
        name = document["builtin"]
        if name not in BUILTIN_SUBGROUPS:
            raise SpecInvalidError(f"Unknown built-in subgroup '{name}'", details={"known": sorted(BUILTIN_SUBGROUPS)})
        return BUILTIN_SUBGROUPS[name](ctx)

    factory = ElementaryFactory(ctx)
    generators = [evaluate_word(factory, word) for word in _words(document, "generators")]
    name = document.get("name", "H") if isinstance(document, dict) else "H"
    cap = document.get("cap") if isinstance(document, dict) else None
    logger.debug(f"🔧 Subgroup '{name}' with {len(generators)} generators")
    return SubgroupHandle.from_generators(name, ctx, generators, cap=cap)
