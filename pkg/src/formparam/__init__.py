"""
The Heisenberg quasimodule on R x R, odd form parameters and odd form ideals.

Point sets are explicit frozensets of HPoint; closures keep a generator list
so later certificates only need to look at generators.
"""

from .heisenberg import HPoint, Orientation, HeisenbergOps, heisenberg, hplus, hneg, hminus, hscale, trace
from .closure import ClosedSet, close_subgroup, close_subquasimodule, enumerate_between
from .ideals import additive_closure, ideal_generated, enumerate_ideals, is_left_unimodular
from .parameters import (
    FormParameter,
    OddFormIdeal,
    delta_min,
    delta_max,
    make_form_parameter,
    enumerate_form_parameters,
    omega_min,
    omega_max,
    make_odd_form_ideal,
    enumerate_relative_form_parameters,
    full_level,
    trivial_level,
    points_digest,
)
from .derived import (
    DerivedSets,
    DefinedIdeal,
    derived_sets,
    inverse_parameter,
    invert_points,
    defined_ideal,
    defined_ideal_from_points,
)
from .checks import verify_quasimodule_identities

__all__ = [
    # Heisenberg quasimodule
    "HPoint",
    "Orientation",
    "HeisenbergOps",
    "heisenberg",
    "hplus",
    "hneg",
    "hminus",
    "hscale",
    "trace",
    # Closures
    "ClosedSet",
    "close_subgroup",
    "close_subquasimodule",
    "enumerate_between",
    # Ring ideals
    "additive_closure",
    "ideal_generated",
    "enumerate_ideals",
    "is_left_unimodular",
    # Parameters
    "FormParameter",
    "OddFormIdeal",
    "delta_min",
    "delta_max",
    "make_form_parameter",
    "enumerate_form_parameters",
    "omega_min",
    "omega_max",
    "make_odd_form_ideal",
    "enumerate_relative_form_parameters",
    "full_level",
    "trivial_level",
    "points_digest",
    # Derived sets
    "DerivedSets",
    "DefinedIdeal",
    "derived_sets",
    "inverse_parameter",
    "invert_points",
    "defined_ideal",
    "defined_ideal_from_points",
    # Checks
    "verify_quasimodule_identities",
]
