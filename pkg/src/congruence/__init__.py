"""
Congruence subgroups of level (I, Omega): U, U~ and CU, the preelementary
subgroup EU(I, Omega) with its normal closure, and the checks around them.
"""

from .membership import (
    Level,
    CongruenceSets,
    MembershipCertificate,
    TildeConditions,
    make_level,
    in_principal,
    is_principal,
    in_principal_bruteforce,
    in_principal_max_coordinates,
    congruence_to_identity,
    conjugated_omega,
    zero_column_defect,
    tilde_conditions,
    in_tilde,
    is_tilde,
    in_tilde_bruteforce,
    in_CU,
    is_CU,
)
from .levels import NormalClosure, eu_level_generators, eu_level_normal_closure, omega_for
from .checks import (
    verify_quadratic_defect,
    verify_column_congruence,
    verify_tilde_normalizes,
    verify_membership_oracles,
    verify_tilde_criteria,
    verify_max_level_coordinates,
    verify_generator_memberships,
    verify_congruence_suite,
)
from .commutators import (
    ShortMove,
    ExtraMove,
    ColumnIdentities,
    verify_commutator_columns,
    sweep_commutator_columns,
    random_move,
)

__all__ = [
    # Levels and membership
    "Level",
    "CongruenceSets",
    "MembershipCertificate",
    "TildeConditions",
    "make_level",
    "in_principal",
    "is_principal",
    "in_principal_bruteforce",
    "in_principal_max_coordinates",
    "congruence_to_identity",
    "conjugated_omega",
    "zero_column_defect",
    "tilde_conditions",
    "in_tilde",
    "is_tilde",
    "in_tilde_bruteforce",
    "in_CU",
    "is_CU",
    # Preelementary subgroups
    "NormalClosure",
    "eu_level_generators",
    "eu_level_normal_closure",
    "omega_for",
    # Checks
    "verify_quadratic_defect",
    "verify_column_congruence",
    "verify_tilde_normalizes",
    "verify_membership_oracles",
    "verify_tilde_criteria",
    "verify_max_level_coordinates",
    "verify_generator_memberships",
    "verify_congruence_suite",
    # Commutator columns
    "ShortMove",
    "ExtraMove",
    "ColumnIdentities",
    "verify_commutator_columns",
    "sweep_commutator_columns",
    "random_move",
]
