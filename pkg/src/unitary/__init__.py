"""
The odd unitary group U_2n+1(R, Delta) and its elementary subgroup.

Matrices are indexed by Theta = {-n, ..., n}; ``unitary.theta`` owns the
index-to-position map.
"""

from .theta import Theta, eps
from .matrix import UMatrix
from .forms import FormsContext, verify_form_identities
from .membership import UnitaryCertificate, certify_unitary, is_unitary, is_unitary_bruteforce, try_is_unitary
from .generators import ElementaryFactory, additive_basis, distinct_matrices
from .relations import verify_relations, verify_conjugations, RELATION_IDS, CONJUGATION_IDS
from .embeddings import embed_even, embed_odd, shift_index, verify_embeddings
from .classical import classical_instance, preserves_gram, lambda_points, verify_unitary_oracles
from .closure import generate_group, enumerate_unitary_group, random_products
from .words import Token, short_token, extra_token, permutation_token, matrix_token, parse_token, evaluate_word

__all__ = [
    # Indices and matrices
    "Theta",
    "eps",
    "UMatrix",
    # Forms
    "FormsContext",
    "verify_form_identities",
    # Membership
    "UnitaryCertificate",
    "certify_unitary",
    "is_unitary",
    "is_unitary_bruteforce",
    "try_is_unitary",
    # Elementary matrices
    "ElementaryFactory",
    "additive_basis",
    "distinct_matrices",
    "verify_relations",
    "verify_conjugations",
    "RELATION_IDS",
    "CONJUGATION_IDS",
    # Embeddings and classical groups
    "embed_even",
    "embed_odd",
    "shift_index",
    "verify_embeddings",
    "classical_instance",
    "preserves_gram",
    "lambda_points",
    "verify_unitary_oracles",
    # Closures
    "generate_group",
    "enumerate_unitary_group",
    "random_products",
    # Generator words
    "Token",
    "short_token",
    "extra_token",
    "permutation_token",
    "matrix_token",
    "parse_token",
    "evaluate_word",
]
