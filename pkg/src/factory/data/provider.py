import json
from pathlib import Path
from typing import Any, Optional, Union

import pandas as pd

from domain import InstanceConfig
from factory.data.models import Instance
from formparam.heisenberg import HPoint
from formparam.ideals import ideal_generated
from formparam.parameters import make_form_parameter
from rings.finite_ring import FiniteRing, build_ring
from rings.involution import Involution, involution_from_table, standard_involution
from rings.quadruple import make_odd_quadruple
from unitary.classical import classical_instance
from unitary.forms import FormsContext
from utils.errors import SpecInvalidError
from utils.logging_config import setup_logging, get_logger

pd.set_option("display.max_columns", None)
pd.set_option("display.width", 160)

# Initialize logging
setup_logging()
logger = get_logger(__name__)


# =========================
#      DEMO INSTANCES
# =========================
F2_IDENTITY = {
    "ring": {"kind": "prime_field", "p": 2},
    "involution": "identity",
    "lambda": 1,
    "mu": 0,
    "delta": "max",
    "n": 3,
}

Z4_IDENTITY = {
    "ring": {"kind": "integers_mod", "m": 4},
    "involution": "identity",
    "lambda": 1,
    "mu": 2,
    "delta": "max",
    "n": 3,
}

M2F2_TRANSPOSE = {
    "ring": {"kind": "matrix", "dim": 2, "inner": {"kind": "prime_field", "p": 2}},
    "involution": "transpose",
    "lambda": "one",
    "mu": "zero",
    "delta": "max",
    "n": 3,
    "ideal": ["zero"],
}

SP_LIKE_F3 = {
    "ring": {"kind": "prime_field", "p": 3},
    "delta": "Sp-odd",
    "n": 1,
}

GL_LIKE_F2 = {
    "ring": {"kind": "prime_field", "p": 2},
    "delta": "GL-odd",
    "n": 1,
}

DEMO_INSTANCES = {
    "f2": F2_IDENTITY,
    "z4": Z4_IDENTITY,
    "m2f2": M2F2_TRANSPOSE,
    "sp-f3": SP_LIKE_F3,
    "gl-f2": GL_LIKE_F2,
}


# =========================
#      CONFIG LOADING
# =========================
def load_config(source: Union[str, Path, dict[str, Any], InstanceConfig, None] = None) -> InstanceConfig:
    """
    Read an instance from a JSON file, a demo name or a dict.

    Without a source the F2 demo instance is used.

    Raises:
        SpecInvalidError: unreadable file or malformed JSON
        pydantic.ValidationError: the JSON does not match InstanceConfig
    """
    if source is None:
        source = "f2"

    if isinstance(source, InstanceConfig):
        return source

    if isinstance(source, dict):
        return InstanceConfig.model_validate(source)

    if str(source) in DEMO_INSTANCES:
        logger.debug(f"🔧 Using demo instance '{source}'")
        return InstanceConfig.model_validate(DEMO_INSTANCES[str(source)])

    path = Path(source)
    try:
        data = json.loads(path.read_text())

    except FileNotFoundError:
        raise SpecInvalidError(f"Config file not found: {path}")

    except json.JSONDecodeError as e:
        raise SpecInvalidError(f"Config file {path} is not valid JSON: {e}")

    return InstanceConfig.model_validate(data)


def load_json(path: Union[str, Path]) -> Any:
    """
    Raises:
        SpecInvalidError: unreadable file or malformed JSON
    """
    try:
        return json.loads(Path(path).read_text())

    except FileNotFoundError:
        raise SpecInvalidError(f"File not found: {path}")

    except json.JSONDecodeError as e:
        raise SpecInvalidError(f"{path} is not valid JSON: {e}")


# =========================
#     INSTANCE BUILDING
# =========================
def resolve_involution(ring: FiniteRing, value: Union[str, list[int]]) -> Involution:
    if isinstance(value, str):
        return standard_involution(ring, value)
    return involution_from_table(ring, value)


def _points(ring: FiniteRing, pairs: list[list[Any]]) -> list[HPoint]:
    points = []
    for pair in pairs:
        if len(pair) != 2:
            raise SpecInvalidError(f"Delta points are [x, y] pairs, got {pair!r}")
        points.append(HPoint(ring.parse_element(pair[0]), ring.parse_element(pair[1])))
    return points


def _classical_context(config: InstanceConfig, cap: Optional[int]) -> FormsContext:
    kind = config.classical_kind
    base = config.ring

    if kind != "even-as-odd":
        return classical_instance(kind, base, config.n, cap=cap)

    ring = build_ring(base, cap)
    lam = "minus_one" if ring.parse_element(config.lambda_) == ring.minus_one and ring.minus_one != ring.one else "one"
    ctx = classical_instance(kind, base, config.n, lam=lam, cap=cap)
    if config.lambda_subset is None:
        return ctx

    quad = ctx.quad
    subset = [quad.ring.parse_element(y) for y in config.lambda_subset]
    delta = make_form_parameter(quad, [HPoint(quad.ring.zero, y) for y in subset])
    return FormsContext(n=config.n, delta=delta)


def build_context(config: InstanceConfig, cap: Optional[int] = None) -> FormsContext:
    """
    Ring, odd quadruple, form parameter and rank n of an instance.

    Raises:
        SpecInvalidError, SizeOverflowError: bad ring recipe
        NotASymmetryError, MuConstraintError: lambda or mu violate the quadruple axioms
        CertificationFailedError: delta is not an odd form parameter
        IncompatibleBaseError: classical kind over an unsuitable base
    """
    if config.classical_kind is not None:
        return _classical_context(config, cap)

    ring = build_ring(config.ring, cap)
    bar = resolve_involution(ring, config.involution)
    quad = make_odd_quadruple(ring, bar, ring.parse_element(config.lambda_), ring.parse_element(config.mu))

    if isinstance(config.delta, str):
        delta = make_form_parameter(quad, config.delta)
    else:
        delta = make_form_parameter(quad, _points(ring, config.delta))

    return FormsContext(n=config.n, delta=delta)


def resolve_ideal(ctx: FormsContext, refs: Optional[list[Any]]) -> Optional[frozenset[int]]:
    """The involution-invariant two-sided ideal generated by the referenced elements"""
    if refs is None:
        return None
    ring, bar = ctx.ring, ctx.quad.bar
    gens = {ring.parse_element(r) for r in refs}
    gens |= {bar(x) for x in gens}
    return ideal_generated(ring, gens, "two")


def build_instance(source: Union[str, Path, dict[str, Any], InstanceConfig, None] = None, cap: Optional[int] = None) -> Instance:
    config = load_config(source)
    ctx = build_context(config, cap)
    instance = Instance(config=config, ctx=ctx, ideal=resolve_ideal(ctx, config.ideal))
    logger.info(f"✅ Instance {instance.digest}: {ctx.ring.spec.label()}, n = {ctx.n}, |Delta| = {len(ctx.delta)}")
    return instance
