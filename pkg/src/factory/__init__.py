"""
Factory module for instance and data creation.

This module turns configs into forms contexts and results into tables
for the oddform tools, organized into:
- data: Config loading, random generator words and formatting
"""

# Import from data submodule
from .data.formatters import checks_to_dataframe, parameters_to_dataframe, orbits_to_dataframe, report_to_text
from .data.generators import generate_words, generate_elements, subgroup_from_document, witnesses_from_document
from .data.models import Instance, WordParameters
from .data.provider import DEMO_INSTANCES, load_config, build_context, build_instance

__all__ = [
    # Data formatters - convert results to DataFrames
    "checks_to_dataframe",
    "parameters_to_dataframe",
    "orbits_to_dataframe",
    "report_to_text",
    # Data generators - random words and subgroup documents
    "generate_words",
    "generate_elements",
    "subgroup_from_document",
    "witnesses_from_document",
    # Data models
    "Instance",
    "WordParameters",
    # Data providers - build instances from config
    "DEMO_INSTANCES",
    "load_config",
    "build_context",
    "build_instance",
]
