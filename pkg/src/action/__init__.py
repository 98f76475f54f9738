"""
The conjugation action on relative form parameters, its orbits, and the
M2(F2) scenario that exercises the whole stack.
"""

from .conjugation import (
    conj_form_parameter,
    conj_level,
    conj_by_vectors,
    verify_action_laws,
    check_conjugated_congruence,
    check_conjugated_elementary,
)
from .orbits import ROFPLattice, OrbitPartition, rofp_lattice, orbits
from .scenario import (
    ScenarioResult,
    m2f2_context,
    m2f2_block_subgroup,
    right_ideal,
    block_diagonal,
    run_m2f2_scenario,
)

__all__ = [
    # Action
    "conj_form_parameter",
    "conj_level",
    "conj_by_vectors",
    "verify_action_laws",
    "check_conjugated_congruence",
    "check_conjugated_elementary",
    # Orbits
    "ROFPLattice",
    "OrbitPartition",
    "rofp_lattice",
    "orbits",
    # Scenario
    "ScenarioResult",
    "m2f2_context",
    "m2f2_block_subgroup",
    "right_ideal",
    "block_diagonal",
    "run_m2f2_scenario",
]
