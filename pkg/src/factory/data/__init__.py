"""
Data module for instance building, random generator words and formatting.

This module turns JSON configs into forms contexts, draws random elementary
words for sampled checks, and renders results as pandas DataFrames.
"""

from .formatters import checks_to_dataframe, parameters_to_dataframe, orbits_to_dataframe, report_to_text
from .generators import (
    BUILTIN_SUBGROUPS,
    random_token,
    generate_words,
    generate_elements,
    witnesses_from_document,
    subgroup_from_document,
)
from .models import Instance, WordParameters
from .provider import (
    DEMO_INSTANCES,
    load_config,
    load_json,
    build_context,
    build_instance,
    resolve_ideal,
    resolve_involution,
)

__all__ = [
    # Data formatters - convert results to DataFrames
    "checks_to_dataframe",
    "parameters_to_dataframe",
    "orbits_to_dataframe",
    "report_to_text",
    # Data generators - random words and subgroup documents
    "BUILTIN_SUBGROUPS",
    "random_token",
    "generate_words",
    "generate_elements",
    "witnesses_from_document",
    "subgroup_from_document",
    # Data models
    "Instance",
    "WordParameters",
    # Data providers - build instances from config
    "DEMO_INSTANCES",
    "load_config",
    "load_json",
    "build_context",
    "build_instance",
    "resolve_ideal",
    "resolve_involution",
]
